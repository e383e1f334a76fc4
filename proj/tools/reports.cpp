#include "reports.hpp"

#include <cmath>

namespace apmeas::cli {

using nlohmann::json;

namespace {

json window(const Window& w) { return json::array({w.lo(), w.hi()}); }

// JSON has no infinity; an empty period set reports a null radius.
json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

json witness(const std::optional<FailureWitness>& w) {
  if (!w) return nullptr;
  return {{"epsilon", w->epsilon}, {"covering_radius", finite_or_null(w->gap)}};
}

}  // namespace

json to_json(const NormReport& r) {
  return {{"value", r.value},
          {"argmax_translate", r.argmax_translate},
          {"method", to_string(r.method)},
          {"family_size", r.family_size}};
}

json to_json(const PeriodSet& p) {
  return {{"epsilon", p.epsilon},
          {"scan", window(p.scan_window)},
          {"step", p.scan_step},
          {"members", p.members},
          {"max_gap", finite_or_null(p.max_gap)},
          {"covering_radius", finite_or_null(relative_density(p))}};
}

json to_json(const EpsilonRow& r) {
  return {{"epsilon", r.epsilon},
          {"members", r.members},
          {"radius_inner", finite_or_null(r.radius_inner)},
          {"radius_outer", finite_or_null(r.radius_outer)},
          {"stable", r.stable}};
}

json to_json(const ClassificationReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) rows.push_back(to_json(row));
  json comps = json::array();
  for (const auto& c : r.components) {
    json crow = json::array();
    for (const auto& row : c.rows) crow.push_back(to_json(row));
    comps.push_back({{"component", c.component},
                     {"rows", std::move(crow)},
                     {"norm_ap_evidence", c.norm_ap_evidence},
                     {"failure_witness", witness(c.failure_witness)}});
  }
  json out = {{"inner_scan", window(r.inner_scan)},
              {"outer_scan", window(r.outer_scan)},
              {"threshold", r.threshold},
              {"rows", std::move(rows)},
              {"norm_ap_evidence", r.norm_ap_evidence},
              {"strong_ap_evidence", r.strong_ap_evidence},
              {"equi_bohr_checked", r.equi_bohr_checked},
              {"failure_witness", witness(r.failure_witness)},
              {"components", std::move(comps)},
              {"caveat", r.caveat}};
  if (r.equi_bohr_checked) out["equi_bohr_slack"] = r.equi_bohr_slack;
  return out;
}

json to_json(const PeakSplit& p, const Spectrum& s) {
  json peaks = json::array();
  for (const auto& pk : p.peaks) {
    peaks.push_back({{"freq", pk.freq}, {"height", pk.height}, {"intensity", pk.intensity}});
  }
  return {{"peaks", std::move(peaks)},
          {"continuous_floor", p.continuous_floor},
          {"pp_mass_fraction", p.pp_mass_fraction},
          {"min_raw", s.min_raw},
          {"window_length", s.window_length},
          {"fmin", s.fmin},
          {"fstep", s.fstep},
          {"samples", s.intensity.size()}};
}

}  // namespace apmeas::cli
