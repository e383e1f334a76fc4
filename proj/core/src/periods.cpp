#include "apmeas/periods.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "apmeas/error.hpp"
#include "apmeas/norms.hpp"
#include "apmeas/parallel.hpp"
#include "sliding.hpp"

namespace apmeas {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_step(double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw Error(ErrorCode::InvalidArgument, "scan step must be > 0");
}

// k with x = k * unit, or nullopt when x is not on that lattice.
std::optional<long long> lattice_index(double x, double unit) {
  const double q = x / unit;
  const double k = std::round(q);
  if (std::abs(q - k) > 1e-9 * std::max(1.0, std::abs(q))) return std::nullopt;
  return static_cast<long long>(k);
}

}  // namespace

std::vector<double> scan_grid(const Window& scan, double step) {
  check_step(step);
  const auto n = static_cast<std::size_t>(std::floor(scan.length() / step + 1e-9));
  std::vector<double> ts(n + 1);
  for (std::size_t i = 0; i <= n; ++i) {
    double t = scan.lo() + static_cast<double>(i) * step;
    if (std::abs(t) < 1e-12 * std::max(1.0, std::abs(scan.lo()))) t = 0.0;
    ts[i] = t;
  }
  return ts;
}

PeriodSet make_period_set(double epsilon, const Window& scan, double step, std::vector<double> members) {
  PeriodSet ps;
  ps.epsilon = epsilon;
  ps.scan_window = scan;
  ps.scan_step = step;
  std::sort(members.begin(), members.end());
  ps.members = std::move(members);
  if (ps.members.empty()) {
    ps.max_gap = kInf;
    ps.covering_radius = kInf;
    return ps;
  }
  double gap = std::max(0.0, ps.members.front() - scan.lo());
  for (std::size_t i = 1; i < ps.members.size(); ++i) gap = std::max(gap, ps.members[i] - ps.members[i - 1]);
  gap = std::max(gap, scan.hi() - ps.members.back());
  ps.max_gap = gap;
  ps.covering_radius = gap;
  return ps;
}

double relative_density(const PeriodSet& ps) { return ps.members.empty() ? kInf : ps.covering_radius; }

DistanceScan norm_distances(const Measure& mu, const Window& U, const Window& scan, double step,
                            const PeriodOptions& opt) {
  DistanceScan out;
  out.ts = scan_grid(scan, step);
  const bool snapping = !opt.snap_candidates.empty();
  const double reach = snapping ? 0.5 * step : 0.0;
  const double ext_lo = scan.lo() - reach;
  const double ext_hi = scan.hi() + reach;

  double xlo;
  double xhi;
  if (const auto& T = mu.truncation()) {
    const double wlo = T->lo() + std::max(0.0, ext_hi);
    const double whi = T->hi() + std::min(0.0, ext_lo);
    if (!(whi - wlo >= U.length())) {
      throw Error(ErrorCode::ScanExceedsTruncation, "scan window leaves no edge-safe analysis window");
    }
    out.analysis_window = Window(wlo, whi);
    xlo = wlo - U.lo();
    xhi = whi - U.hi();
  } else if (mu.is_zero()) {
    xlo = -1.0;
    xhi = 1.0;
  } else {
    const auto h = mu.support_hull();
    xlo = h.lo + std::min(0.0, ext_lo) - U.hi() - 1.0;
    xhi = h.hi + std::max(0.0, ext_hi) - U.lo() + 1.0;
  }

  auto dist = [&](double t) {
    return detail::sliding_sup(detail::difference_profile(mu, t), U, xlo, xhi).value;
  };

  out.distance.assign(out.ts.size(), 0.0);
  out.witness = out.ts;
  parallel_for(out.ts.size(), [&](std::size_t i) {
    const double t = out.ts[i];
    double best = dist(t);
    double arg = t;
    if (snapping) {
      auto it = std::lower_bound(opt.snap_candidates.begin(), opt.snap_candidates.end(), t - reach);
      for (; it != opt.snap_candidates.end() && *it <= t + reach; ++it) {
        if (*it == t) continue;
        const double v = dist(*it);
        if (v < best) {
          best = v;
          arg = *it;
        }
      }
    }
    out.distance[i] = best;
    out.witness[i] = arg;
  });
  return out;
}

PeriodSet threshold(const DistanceScan& d, double epsilon, const Window& scan, double step) {
  std::vector<double> members;
  for (std::size_t i = 0; i < d.ts.size(); ++i) {
    if (d.distance[i] <= epsilon) members.push_back(d.ts[i]);
  }
  return make_period_set(epsilon, scan, step, std::move(members));
}

PeriodSet norm_periods(const Measure& mu, const Window& U, double epsilon, const Window& scan, double step,
                       const PeriodOptions& opt) {
  return threshold(norm_distances(mu, U, scan, step, opt), epsilon, scan, step);
}

std::vector<double> uniform_distances(const SampledFunction& F, const Window& scan, double step,
                                      std::optional<ClosedInterval> domain) {
  const auto ts = scan_grid(scan, step);
  if (F.samples.empty()) throw Error(ErrorCode::InvalidArgument, "empty sampled function");
  if (!lattice_index(step, F.step) || !lattice_index(scan.lo(), F.step)) {
    throw Error(ErrorCode::GridMismatch, "scan grid is not a sub-grid of the sample grid");
  }
  const ClosedInterval dom = domain.value_or(F.validity);
  const double slack = 1e-9 * F.step;
  auto valid = [&](std::size_t j) {
    const double x = F.x(j);
    return x >= F.validity.lo - slack && x <= F.validity.hi + slack;
  };
  const auto n = static_cast<long long>(F.samples.size());
  std::vector<double> out(ts.size(), kInf);
  parallel_for(ts.size(), [&](std::size_t i) {
    const long long k = *lattice_index(ts[i], F.step);
    bool any = false;
    double m = 0.0;
    for (long long j = std::max(0LL, k); j < n && j - k < n; ++j) {
      const double x = F.x(static_cast<std::size_t>(j));
      if (x < dom.lo - slack || x > dom.hi + slack) continue;
      const auto jj = static_cast<std::size_t>(j);
      const auto jk = static_cast<std::size_t>(j - k);
      if (!valid(jj) || !valid(jk)) continue;
      m = std::max(m, std::abs(F.samples[jj] - F.samples[jk]));
      any = true;
    }
    if (any) out[i] = m;
  });
  return out;
}

PeriodSet uniform_periods(const SampledFunction& F, double epsilon, const Window& scan, double step,
                          std::optional<ClosedInterval> domain) {
  const auto ts = scan_grid(scan, step);
  const auto d = uniform_distances(F, scan, step, domain);
  std::vector<double> members;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (d[i] <= epsilon) members.push_back(ts[i]);
  }
  return make_period_set(epsilon, scan, step, std::move(members));
}

namespace {

std::vector<double> equi_distances(std::span<const SampledFunction> family, const Window& scan, double step,
                                   std::optional<ClosedInterval> domain) {
  std::vector<double> worst(scan_grid(scan, step).size(), 0.0);
  for (const auto& F : family) {
    const auto d = uniform_distances(F, scan, step, domain);
    for (std::size_t i = 0; i < d.size(); ++i) worst[i] = std::max(worst[i], d[i]);
  }
  return worst;
}

}  // namespace

PeriodSet equi_bohr_periods(std::span<const SampledFunction> family, double epsilon, const Window& scan,
                            double step, std::optional<ClosedInterval> domain) {
  if (family.empty()) throw Error(ErrorCode::InvalidArgument, "equi-Bohr family must be non-empty");
  const auto ts = scan_grid(scan, step);
  const auto d = equi_distances(family, scan, step, domain);
  std::vector<double> members;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (d[i] <= epsilon) members.push_back(ts[i]);
  }
  return make_period_set(epsilon, scan, step, std::move(members));
}

PeriodSet stepanov_periods(const DensityPart& f, const Window& U, double epsilon, const Window& scan,
                           double step, std::optional<Window> truncation, const PeriodOptions& opt) {
  PeriodSet ps = norm_periods(Measure::from_density(f, truncation), U, epsilon * U.length(), scan, step, opt);
  ps.epsilon = epsilon;
  return ps;
}

FamilyConvolutions family_convolutions(const Measure& mu, const Window& U, std::span<const TestFunction> family,
                                       const Window& scan, double step) {
  check_step(step);
  const auto s0 = lattice_index(scan.lo(), step);
  if (!s0) throw Error(ErrorCode::GridMismatch, "scan start must be a multiple of the step");
  const auto ts = scan_grid(scan, step);
  const auto n = static_cast<long long>(ts.size()) - 1;

  double wlo;
  double whi;
  if (const auto& T = mu.truncation()) {
    wlo = T->lo() + std::max(0.0, scan.hi());
    whi = T->hi() + std::min(0.0, scan.lo());
    if (!(whi - wlo >= U.length())) {
      throw Error(ErrorCode::ScanExceedsTruncation, "scan window leaves no edge-safe analysis window");
    }
  } else {
    const auto h = mu.is_zero() ? ClosedInterval{0.0, 0.0} : mu.support_hull();
    wlo = h.lo - U.length() - 1.0;
    whi = h.hi + U.length() + 1.0;
  }
  // Translates x with x + U inside the analysis window, on the step lattice.
  const auto d0 = static_cast<long long>(std::ceil((wlo - U.lo()) / step - 1e-9));
  const auto d1 = static_cast<long long>(std::floor((whi - U.hi()) / step + 1e-9));
  if (d1 < d0) throw Error(ErrorCode::ScanExceedsTruncation, "analysis window too short for the step");

  FamilyConvolutions out;
  out.domain = {static_cast<double>(d0) * step, static_cast<double>(d1) * step};
  const long long first = d0 - (*s0 + n);
  const long long last = d1 - *s0;
  const auto count = static_cast<std::size_t>(last - first + 1);
  out.functions.reserve(family.size());
  for (const auto& g : family) {
    auto F = convolve_mf(mu, g.reflected(), static_cast<double>(first) * step, step, count);
    F.validity = {F.x(0), F.x(count - 1)};
    out.functions.push_back(std::move(F));
  }
  return out;
}

EquiBohrComparison compare_equi_bohr(const Measure& mu, const Window& U, double epsilon, const Window& scan,
                                     double step, int depth) {
  EquiBohrComparison cmp;
  cmp.norm = norm_periods(mu, U, epsilon, scan, step);
  const auto family = canonical_family(U, depth);
  const auto fc = family_convolutions(mu, U, family, scan, step);
  cmp.equi = equi_bohr_periods(fc.functions, epsilon, scan, step, fc.domain);
  cmp.grid_points = scan_grid(scan, step).size();
  cmp.norm_subset_of_equi = std::includes(cmp.equi.members.begin(), cmp.equi.members.end(),
                                          cmp.norm.members.begin(), cmp.norm.members.end());
  std::vector<double> sym;
  std::set_symmetric_difference(cmp.norm.members.begin(), cmp.norm.members.end(), cmp.equi.members.begin(),
                                cmp.equi.members.end(), std::back_inserter(sym));
  cmp.symmetric_difference = sym.size();
  cmp.slack_fraction = static_cast<double>(sym.size()) / static_cast<double>(cmp.grid_points);
  return cmp;
}

namespace {

EpsilonRow make_row(const std::vector<double>& ts, const std::vector<double>& dist, double eps,
                    const Window& inner, const Window& outer, double step) {
  std::vector<double> all;
  std::vector<double> in;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (!(dist[i] <= eps)) continue;
    all.push_back(ts[i]);
    if (ts[i] >= inner.lo() && ts[i] <= inner.hi()) in.push_back(ts[i]);
  }
  EpsilonRow row;
  row.epsilon = eps;
  row.members = all.size();
  row.radius_outer = make_period_set(eps, outer, step, std::move(all)).covering_radius;
  row.radius_inner = make_period_set(eps, inner, step, std::move(in)).covering_radius;
  row.stable = std::isfinite(row.radius_outer) && std::isfinite(row.radius_inner) &&
               std::abs(row.radius_outer - row.radius_inner) <= step * (1.0 + 1e-9);
  return row;
}

struct Verdict {
  std::vector<EpsilonRow> rows;
  bool evidence = true;
  std::optional<FailureWitness> witness;
};

Verdict grade(const std::vector<double>& ts, const std::vector<double>& dist, std::vector<double> eps,
              const Window& inner, const Window& outer, double step, double limit) {
  std::sort(eps.begin(), eps.end());
  Verdict v;
  for (double e : eps) {
    auto row = make_row(ts, dist, e, inner, outer, step);
    const bool ok = row.radius_outer <= limit && row.stable;
    v.evidence = v.evidence && ok;
    if (!v.witness && row.radius_outer > limit) v.witness = FailureWitness{e, row.radius_outer};
    v.rows.push_back(row);
  }
  return v;
}

}  // namespace

ClassificationReport classify(const Measure& mu, const Window& U, std::span<const double> epsilons,
                              const Window& scan, double step, const ClassifyOptions& opt) {
  if (epsilons.empty()) throw Error(ErrorCode::InvalidArgument, "classify needs at least one epsilon");
  for (double e : epsilons) {
    if (!(e > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be > 0");
  }
  ClassificationReport rep;
  rep.outer_scan = scan;
  const double c = scan.mid();
  const double q = 0.25 * scan.length();
  rep.inner_scan = Window(c - q, c + q);
  rep.threshold = q;
  rep.caveat =
      "finite-window evidence only: covering radii on two nested scan windows, not a proof of relative density";

  const std::vector<double> eps(epsilons.begin(), epsilons.end());
  const auto d = norm_distances(mu, U, scan, step, opt.periods);
  auto v = grade(d.ts, d.distance, eps, rep.inner_scan, scan, step, rep.threshold);
  rep.rows = v.rows;
  rep.norm_ap_evidence = v.evidence;
  rep.failure_witness = v.witness;

  if (opt.equi_bohr) {
    try {
      const auto family = canonical_family(U, opt.family_depth);
      const auto fc = family_convolutions(mu, U, family, scan, step);
      const auto ed = equi_distances(fc.functions, scan, step, fc.domain);
      const auto ev = grade(d.ts, ed, eps, rep.inner_scan, scan, step, rep.threshold);
      rep.strong_ap_evidence = ev.evidence;
      rep.equi_bohr_checked = true;
      double slack = 0.0;
      for (double e : eps) {
        std::size_t diff = 0;
        for (std::size_t i = 0; i < d.ts.size(); ++i) {
          if ((d.distance[i] <= e) != (ed[i] <= e)) ++diff;
        }
        slack = std::max(slack, static_cast<double>(diff) / static_cast<double>(d.ts.size()));
      }
      rep.equi_bohr_slack = slack;
    } catch (const Error& err) {
      if (err.code() != ErrorCode::GridMismatch && err.code() != ErrorCode::ScanExceedsTruncation) throw;
    }
  }

  if (opt.components) {
    const auto [pp, ac, sc] = components(mu);
    const std::pair<const char*, const Measure*> parts[] = {{"pp", &pp}, {"ac", &ac}, {"sc", &sc}};
    for (const auto& [name, m] : parts) {
      if (m->is_zero()) continue;
      const auto cd = norm_distances(*m, U, scan, step, opt.periods);
      auto cv = grade(cd.ts, cd.distance, eps, rep.inner_scan, scan, step, rep.threshold);
      rep.components.push_back({name, cv.rows, cv.evidence, cv.witness});
    }
  }
  return rep;
}

}  // namespace apmeas
