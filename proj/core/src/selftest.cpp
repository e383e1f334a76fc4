#include "apmeas/selftest.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

#include "apmeas/constructions.hpp"
#include "apmeas/convolution.hpp"
#include "apmeas/corpus.hpp"
#include "apmeas/diffraction.hpp"
#include "apmeas/error.hpp"
#include "apmeas/norms.hpp"
#include "apmeas/periods.hpp"

namespace apmeas {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
};

const Window kU(0.0, 1.0);

void sup_orderings(Outcome& o, const std::vector<Measure>& corpus) {
  const auto family = canonical_family(kU, 5);
  std::size_t bad = 0;
  for (const auto& mu : corpus) {
    const auto v = family_sup_orderings(mu, kU, family);
    if (!(v[0] == v[1] && v[1] == v[2])) ++bad;
  }
  o.pass = bad == 0;
  o.detail << corpus.size() << " measures, " << bad << " with differing orders";
}

void operator_identity(Outcome& o, const std::vector<Measure>& corpus) {
  const auto minus = canonical_family(Window(-1.0, 0.0), 6);
  const auto plus = reflect_all(minus);
  std::size_t mismatch = 0;
  std::size_t above = 0;
  double worst = INFINITY;
  for (const auto& mu : corpus) {
    const double op = operator_norm(mu, kU, minus).value;
    const double fam = norm_via_family(mu, kU, plus).value;
    const double ball = norm_via_dyadic_ball(mu, kU, 6).value;
    const double full = norm_U(mu, kU).value;
    if (op != fam) ++mismatch;
    if (op > full || fam > full) ++above;
    if (full > 0.0) worst = std::min(worst, ball / full);
  }
  o.pass = mismatch == 0 && above == 0 && worst >= 0.98;
  o.detail << "operator/family mismatches " << mismatch << ", above sliding " << above
           << ", min depth-6 ball ratio " << fmt("%.4f", worst);
}

void component_sandwich(Outcome& o, const std::vector<Measure>& corpus) {
  std::size_t bad = 0;
  for (const auto& mu : corpus) {
    const auto [pp, ac, sc] = components(mu);
    const double a = norm_U(pp, kU).value;
    const double b = norm_U(ac, kU).value;
    const double c = norm_U(sc, kU).value;
    const double n = norm_U(mu, kU).value;
    if (!(std::max({a, b, c}) <= n && n <= a + b + c)) ++bad;
  }
  o.pass = bad == 0;
  o.detail << bad << " violations on " << corpus.size() << " measures";
}

void window_equivalence(Outcome& o, const std::vector<Measure>& corpus) {
  const Window V(0.0, 2.0);
  const int N = window_equivalence_constant(kU, V);
  std::size_t bad = 0;
  for (const auto& mu : corpus) {
    const double a = norm_U(mu, kU).value;
    const double b = norm_U(mu, V).value;
    if (!(a / N <= b && b <= N * a)) ++bad;
  }
  o.pass = N == 3 && bad == 0;
  o.detail << "N = " << N << ", " << bad << " violations";
}

void atomic_convergence(Outcome& o) {
  const auto g = TestFunction::hat(0.0, 1.0, 2.0);
  const auto limit = leb01();
  double worst = 0.0;
  for (int n = 1; n <= 64; ++n) {
    worst = std::max(worst, n * product_convergence_defect(ex1_measure(n), limit, g));
  }
  o.pass = worst <= g.lipschitz();
  o.detail << "max n * defect = " << fmt("%.6f", worst) << " (Lipschitz bound " << g.lipschitz() << ")";
}

void perturbed_comb(Outcome& o) {
  std::vector<Atom> atoms;
  for (int n = -59; n <= 59; ++n) {
    atoms.push_back({static_cast<double>(n), 1.0 + 0.05 * std::cos(2.0 * std::numbers::pi * std::sqrt(2.0) * n)});
  }
  const auto mu = Measure::from_atoms(std::move(atoms), Window(-60.0, 60.0));
  const auto cmp = compare_equi_bohr(mu, kU, 0.05, Window(-20.0, 20.0), 1.0 / 64, 5);
  o.pass = cmp.norm_subset_of_equi && cmp.slack_fraction <= 0.02;
  o.detail << "norm periods " << cmp.norm.members.size() << ", equi-Bohr periods " << cmp.equi.members.size()
           << ", subset " << (cmp.norm_subset_of_equi ? "yes" : "no") << ", symmetric difference "
           << cmp.symmetric_difference << "/" << cmp.grid_points << " = " << fmt("%.4f", cmp.slack_fraction);
}

void stepanov_equality(Outcome& o) {
  const double h = 1.0 / 128;
  const Window T(-60.0, 60.0);
  std::vector<cplx> samples(static_cast<std::size_t>(120 * 128));
  for (std::size_t k = 0; k < samples.size(); ++k) {
    const double x = T.lo() + (static_cast<double>(k) + 0.5) * h;
    samples[k] = 1.0 + 0.5 * std::cos(2.0 * std::numbers::pi * x) +
                 0.5 * std::cos(2.0 * std::numbers::pi * std::sqrt(2.0) * x);
  }
  const DensityPart f(T.lo(), h, std::move(samples));
  const auto mu = Measure::from_density(f, T);
  const Window scan(-50.0, 50.0);
  const double step = 1.0 / 16;
  bool equal = true;
  double r_st = INFINITY;
  double r_nm = INFINITY;
  for (double eps : {0.05, 0.1, 0.2}) {
    const auto st = stepanov_periods(f, kU, eps, scan, step, T);
    const auto nm = norm_periods(mu, kU, eps * kU.length(), scan, step);
    equal = equal && st.members == nm.members;
    o.detail << "eps " << eps << ": " << st.members.size() << " periods; ";
    if (eps == 0.2) {
      r_st = relative_density(st);
      r_nm = relative_density(nm);
    }
  }
  o.pass = equal && r_st <= 10.0 && r_nm <= 10.0;
  o.detail << "sets equal " << (equal ? "yes" : "no") << ", covering radius at 0.2: " << fmt("%.4g", r_st) << " / "
           << fmt("%.4g", r_nm);
}

void dyadic_composite_check(Outcome& o) {
  const double eps = 0.1;
  const auto family = canonical_family(Window(-1.0, 1.0), 3);
  const auto dc = dyadic_composite(ex1_measure, leb01(), 10, family);
  const auto g = TestFunction::hat(-1.0, 0.0, 1.0);
  const auto cert = certify_level(dc, eps, 1.0, g.lipschitz());

  // omega * g sampled on a unit grid; distances at every lattice point of the scan.
  const Window scan(-512.0, 512.0);
  const double step = 1.0;
  const auto F = convolve_mf(dc.omega, g, -1536.0, step, 3073);
  const auto dist = uniform_distances(F, scan, step);
  const auto ts = scan_grid(scan, step);
  const double unit = std::ldexp(1.0, cert.N + 1);
  std::size_t lattice = 0;
  std::size_t ok = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (std::fmod(ts[i], unit) != 0.0) continue;
    ++lattice;
    if (dist[i] <= eps) ++ok;
  }
  o.detail << "certified N = " << cert.N << " (realized " << cert.realized_N << ", tail " << cert.tail_N
           << "), lattice points in scan " << lattice << ", periods " << ok << "; distance at 2^k:";
  for (int k = 2; k <= 9; ++k) {
    const auto it = std::find(ts.begin(), ts.end(), std::ldexp(1.0, k));
    if (it != ts.end()) o.detail << " " << fmt("%.3g", dist[static_cast<std::size_t>(it - ts.begin())]);
  }

  const auto pp = std::get<0>(components(dc.omega));
  ClassifyOptions copt;
  copt.equi_bohr = false;
  copt.components = false;
  const std::vector<double> eps_list{eps};
  const auto rep = classify(pp, kU, eps_list, Window(-256.0, 256.0), 0.5, copt);
  const bool witness = rep.failure_witness.has_value() && rep.failure_witness->gap > rep.threshold;
  o.pass = lattice >= 1 && ok == lattice && witness;
  o.detail << "; pp failure witness " << (witness ? fmt("radius %.4g", rep.failure_witness->gap) : std::string("none"))
           << " vs threshold " << rep.threshold;
}

Measure small_mixed_measure() {
  PurePointPart pp({{0.0, 0.4}, {0.25, 0.1}});
  DensityPart ac(0.0, 0.125, {1.2, 1.2, 0.8, 0.8});
  SingularPart sc({SingularPiece::from_ifs({{1.0 / 3, 0.0, 0.5}, {1.0 / 3, 0.25 * 2.0 / 3.0, 0.5}}, 6, 0.2)});
  return Measure(std::move(pp), std::move(ac), std::move(sc), std::nullopt);
}

void cps_components(Outcome& o) {
  const auto s = fibonacci_scheme();
  const auto comb = cps_comb(s, fibonacci_tent(), Window(-170.0, 170.0));
  const auto mu = convolve_mm(comb, small_mixed_measure()).measure;
  const double step = 1.0 / 8;
  ClassifyOptions copt;
  copt.equi_bohr = false;
  copt.periods.snap_candidates = lattice_translates(s, -101.0, 101.0, 0.05);
  const std::vector<double> eps_list{0.2};
  const auto rep = classify(mu, kU, eps_list, Window(-100.0, 100.0), step, copt);
  bool ok = rep.components.size() == 3;
  for (const auto& c : rep.components) {
    const auto& row = c.rows.front();
    ok = ok && std::isfinite(row.radius_outer) && std::isfinite(row.radius_inner) && row.stable;
    o.detail << c.component << " radius " << fmt("%.4g", row.radius_inner) << " / " << fmt("%.4g", row.radius_outer)
             << (row.stable ? " stable; " : " unstable; ");
  }
  o.pass = ok;
}

void diffraction_pipeline(Outcome& o) {
  // Integer lattice.
  std::vector<Atom> atoms;
  for (int n = -59; n <= 59; ++n) atoms.push_back({static_cast<double>(n), 1.0});
  const auto z = Measure::from_atoms(std::move(atoms), Window(-60.0, 60.0));
  const VanHoveSequence vh({50.0, 100.0});
  const auto gz = autocorrelation(z, vh, 1);
  const auto sz = fourier(gz, 0.5, 5.5, 1e-3);
  const double top = *std::max_element(sz.intensity.begin(), sz.intensity.end());
  const auto split = peak_split(sz, 1e-3 * top);
  bool lattice_ok = split.peaks.size() == 5 && split.pp_mass_fraction >= 0.95;
  for (const auto& p : split.peaks) {
    lattice_ok = lattice_ok && std::abs(p.freq - std::round(p.freq)) < 1e-9 && p.intensity >= 0.95 &&
                 p.intensity <= 1.05;
  }
  o.detail << "Z: " << split.peaks.size() << " peaks";
  if (!split.peaks.empty()) o.detail << ", first intensity " << fmt("%.4f", split.peaks.front().intensity);
  o.detail << ", pp fraction " << fmt("%.4f", split.pp_mass_fraction);

  // Fibonacci comb at two averaging windows against the periodogram.
  const auto s = fibonacci_scheme();
  const auto comb = cps_comb(s, fibonacci_tent(), Window(-110.0, 110.0));
  const double fmin = 0.1;
  const double fmax = 2.0;
  const double fstep = 1e-3;
  std::vector<std::vector<double>> tops;
  for (std::size_t n : {1u, 2u}) {
    const auto sp = fourier(autocorrelation(comb, vh, n), fmin, fmax, fstep);
    tops.push_back(top_peak_positions(sp.intensity, fmin, fstep, 5));
  }
  const auto pg = periodogram(comb, Window(-100.0, 100.0), fmin, fmax, fstep / 2);
  const auto oracle = top_peak_positions(pg, fmin, fstep / 2, 5);
  auto within = [&](const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != 5 || b.size() != 5) return false;
    for (std::size_t i = 0; i < 5; ++i) {
      if (std::abs(a[i] - b[i]) > fstep + 1e-12) return false;
    }
    return true;
  };
  const bool fib_ok = within(tops[0], tops[1]) && within(tops[1], oracle);
  o.detail << "; Fibonacci top-5:";
  for (double f : tops[1]) o.detail << " " << fmt("%.3f", f);
  o.detail << (fib_ok ? " (stable, matches oracle)" : " (mismatch)");
  o.pass = lattice_ok && fib_ok;
}

void van_hove(Outcome& o) {
  const auto vh = VanHoveSequence::integers(100);
  std::size_t bad = 0;
  for (std::size_t n = 2; n <= 100; ++n) {
    if (boundary_ratio(vh, ClosedInterval{-1.0, 1.0}, n) != 2.0 / static_cast<double>(n)) ++bad;
  }
  std::vector<Atom> atoms;
  for (int n = -59; n <= 59; ++n) atoms.push_back({static_cast<double>(n), 1.0});
  const auto z = Measure::from_atoms(std::move(atoms), Window(-60.0, 60.0));
  const auto e = eberlein(z, z, vh, 50);
  const double at0 = mass(e, Window(-0.5, 0.5));
  o.pass = bad == 0 && at0 >= 0.98 && at0 <= 1.02;
  o.detail << "boundary ratio mismatches " << bad << ", coefficient at 0 = " << fmt("%.6f", at0);
}

struct Criterion {
  int id;
  const char* name;
  double limit;  // seconds, 0 = none
  bool uses_corpus;
  void (*plain)(Outcome&);
  void (*with_corpus)(Outcome&, const std::vector<Measure>&);
};

const Criterion kCriteria[] = {
    {1, "sup-order interchange", 10.0, true, nullptr, sup_orderings},
    {2, "operator identity and ball ratio", 60.0, true, nullptr, operator_identity},
    {3, "component sandwich", 0.0, true, nullptr, component_sandwich},
    {4, "window equivalence", 0.0, true, nullptr, window_equivalence},
    {5, "atomic averages converge", 5.0, false, atomic_convergence, nullptr},
    {6, "norm vs equi-Bohr periods", 120.0, false, perturbed_comb, nullptr},
    {7, "Stepanov period equality", 0.0, false, stepanov_equality, nullptr},
    {8, "dyadic composite periods", 180.0, false, dyadic_composite_check, nullptr},
    {9, "model-set component periods", 0.0, false, cps_components, nullptr},
    {10, "diffraction pipeline", 60.0, false, diffraction_pipeline, nullptr},
    {11, "van Hove and Eberlein", 0.0, false, van_hove, nullptr},
};

}  // namespace

std::vector<CriterionResult> run_selftest(const SelftestOptions& opt, const ResultSink& sink) {
  std::vector<Measure> measures;
  std::vector<CriterionResult> out;
  for (const auto& c : kCriteria) {
    if (!opt.only.empty() && std::find(opt.only.begin(), opt.only.end(), c.id) == opt.only.end()) continue;
    if (c.uses_corpus && measures.empty()) measures = corpus(opt.seed, opt.corpus_size);
    Outcome o;
    const auto t0 = Clock::now();
    try {
      if (c.uses_corpus) {
        c.with_corpus(o, measures);
      } else {
        c.plain(o);
      }
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " error: " << e.what();
    }
    CriterionResult r;
    r.id = c.id;
    r.name = c.name;
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    r.pass = o.pass;
    r.detail = o.detail.str();
    if (c.limit > 0.0 && r.seconds >= c.limit) {
      r.pass = false;
      r.detail += " [over time limit " + fmt("%.0f s", c.limit) + "]";
    }
    if (sink) sink(r);
    out.push_back(std::move(r));
  }
  return out;
}

std::string format_result(const CriterionResult& r) {
  char head[128];
  std::snprintf(head, sizeof head, "%s %2d  %-34s (%.2f s)  ", r.pass ? "PASS" : "FAIL", r.id, r.name.c_str(),
                r.seconds);
  return head + r.detail;
}

}  // namespace apmeas
