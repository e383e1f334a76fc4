#include <gtest/gtest.h>

#include <cmath>

#include "apmeas/constructions.hpp"
#include "apmeas/corpus.hpp"
#include "apmeas/error.hpp"
#include "apmeas/norms.hpp"
#include "apmeas/periods.hpp"
#include "oracles.hpp"

using namespace apmeas;

namespace {

Measure integers(int lo, int hi) {
  std::vector<Atom> atoms;
  for (int n = lo + 1; n < hi; ++n) atoms.push_back({static_cast<double>(n), 1.0});
  return Measure::from_atoms(std::move(atoms), Window(lo, hi));
}

const Window kU(0.0, 1.0);

SampledFunction sampled(double lo, double hi, double step, double (*f)(double)) {
  SampledFunction F;
  F.origin = lo;
  F.step = step;
  const auto n = static_cast<std::size_t>(std::llround((hi - lo) / step)) + 1;
  for (std::size_t i = 0; i < n; ++i) F.samples.push_back(f(F.x(i)));
  F.validity = {lo, F.x(n - 1)};
  return F;
}

double cos2pi(double x) { return std::cos(2.0 * M_PI * x); }

double dist_to_z(double t) { return std::abs(t - std::round(t)); }

}  // namespace

TEST(NormPeriods, IntegerCombHasIntegerPeriods) {
  const auto ps = norm_periods(integers(-40, 40), kU, 0.5, Window(-5.0, 5.0), 0.25);
  std::vector<double> want;
  for (int k = -5; k <= 5; ++k) want.push_back(k);
  EXPECT_EQ(ps.members, want);
  EXPECT_EQ(ps.max_gap, 1.0);
  EXPECT_EQ(relative_density(ps), 1.0);
}

TEST(NormPeriods, LargeEpsilonAdmitsEveryTranslate) {
  const Window scan(-2.0, 2.0);
  const auto grid = scan_grid(scan, 0.25);
  for (const auto& mu : corpus(21, 24)) {
    const double eps = 2.0 * norm_U(mu, kU).value * (1.0 + 1e-12) + 1e-300;
    EXPECT_EQ(norm_periods(mu, kU, eps, scan, 0.25).members, grid);
  }
}

TEST(NormPeriods, ScanMustLeaveAnAnalysisWindow) {
  try {
    norm_periods(integers(-5, 5), kU, 0.1, Window(-10.0, 10.0), 1.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ScanExceedsTruncation);
  }
}

TEST(NormPeriods, ZeroIsAlwaysAPeriod) {
  for (const auto& mu : corpus(22, 24)) {
    const auto d = norm_distances(mu, kU, Window(-1.0, 1.0), 0.5);
    EXPECT_EQ(d.distance[2], 0.0);
  }
}

TEST(NormPeriods, SingleAtomFallsBackToTheScanEdges) {
  const auto ps = norm_periods(Measure::from_atoms({{0.0, 1.0}}), kU, 0.5, Window(-5.0, 5.0), 0.5);
  EXPECT_EQ(ps.members, std::vector<double>{0.0});
  EXPECT_EQ(relative_density(ps), 5.0);
  EXPECT_TRUE(std::isinf(relative_density(make_period_set(0.1, kU, 0.5, {}))));
}

TEST(UniformPeriods, MatchBruteForceDistances) {
  const auto F = sampled(-4.0, 4.0, 1.0 / 16, [](double x) { return std::sin(3.0 * x) + std::cos(x * x); });
  const Window scan(-1.0, 1.0);
  const auto d = uniform_distances(F, scan, 1.0 / 8);
  const auto ts = scan_grid(scan, 1.0 / 8);
  ASSERT_EQ(d.size(), ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const auto k = std::llround(ts[i] * 16);
    EXPECT_EQ(d[i], oracle::uniform_distance(F.samples, k, 0, F.size())) << ts[i];
  }
}

TEST(UniformPeriods, CosineBand) {
  // sup |cos 2 pi x - cos 2 pi (x - t)| = 2 |sin pi t|.
  const auto F = sampled(-8.0, 8.0, 1.0 / 256, cos2pi);
  const double eps = 0.2;
  const double band = std::asin(eps / 2.0) / M_PI;
  const Window scan(-2.0, 2.0);
  const auto ps = uniform_periods(F, eps, scan, 1.0 / 256);
  for (double t : scan_grid(scan, 1.0 / 256)) {
    const bool member = std::binary_search(ps.members.begin(), ps.members.end(), t);
    if (dist_to_z(t) < band - 1e-3) EXPECT_TRUE(member) << t;
    if (dist_to_z(t) > band + 1e-3) EXPECT_FALSE(member) << t;
  }
}

TEST(UniformPeriods, GridMismatch) {
  const auto F = sampled(-1.0, 1.0, 0.25, cos2pi);
  try {
    uniform_distances(F, Window(-1.0, 1.0), 0.3);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::GridMismatch);
  }
}

TEST(EquiBohr, SingletonFamilyIsUniform) {
  const auto F = sampled(-6.0, 6.0, 1.0 / 32, [](double x) { return cos2pi(x) + 0.5 * std::cos(x); });
  const Window scan(-2.0, 2.0);
  const std::vector<SampledFunction> fam{F};
  for (double eps : {0.05, 0.3, 1.0}) {
    EXPECT_EQ(equi_bohr_periods(fam, eps, scan, 1.0 / 32).members,
              uniform_periods(F, eps, scan, 1.0 / 32).members);
  }
}

TEST(EquiBohr, NormPeriodsSitInsideEquiPeriods) {
  const auto cmp = compare_equi_bohr(integers(-40, 40), kU, 0.1, Window(-5.0, 5.0), 0.25, 4);
  EXPECT_TRUE(cmp.norm_subset_of_equi);
  EXPECT_EQ(cmp.norm.members, cmp.equi.members);
}

TEST(Stepanov, PeriodicStepFunctionBand) {
  // Indicator of [0, 1/2) repeated with period 1; the distance is 2 dist(t, Z).
  std::vector<cplx> v;
  for (int i = 0; i < 80; ++i) v.push_back(i % 2 == 0 ? 1.0 : 0.0);
  const DensityPart f(-20.0, 0.5, v);
  const Window scan(-3.0, 3.0);
  const auto ps = stepanov_periods(f, kU, 0.05, scan, 1.0 / 64, Window(-20.0, 20.0));
  std::vector<double> want;
  for (double t : scan_grid(scan, 1.0 / 64)) {
    if (2.0 * dist_to_z(t) <= 0.05) want.push_back(t);
  }
  EXPECT_EQ(ps.members, want);
}

TEST(Classify, IntegerCombIsNormAlmostPeriodic) {
  const std::vector<double> eps{0.5};
  const auto r = classify(integers(-40, 40), kU, eps, Window(-8.0, 8.0), 0.5);
  ASSERT_EQ(r.rows.size(), 1u);
  EXPECT_EQ(r.rows[0].radius_outer, 1.0);
  EXPECT_TRUE(r.rows[0].stable);
  EXPECT_TRUE(r.norm_ap_evidence);
  EXPECT_TRUE(r.equi_bohr_checked);
  EXPECT_TRUE(r.strong_ap_evidence);
  EXPECT_FALSE(r.failure_witness);
}

TEST(Classify, SingleAtomComponentHasWitness) {
  const auto mu = gallery("ex8", {{"M", 5}});
  const std::vector<double> eps{0.5};
  ClassifyOptions opt;
  opt.equi_bohr = false;
  const auto r = classify(mu, kU, eps, Window(-16.0, 16.0), 0.5, opt);
  bool found = false;
  for (const auto& c : r.components) {
    if (c.component != "pp") continue;
    found = true;
    EXPECT_FALSE(c.norm_ap_evidence);
    ASSERT_TRUE(c.failure_witness);
    EXPECT_GT(c.failure_witness->gap, r.threshold);
  }
  EXPECT_TRUE(found);
}

TEST(Classify, RejectsBadEpsilons) {
  const auto z = integers(-20, 20);
  EXPECT_THROW(classify(z, kU, std::vector<double>{}, Window(-2.0, 2.0), 1.0), Error);
  EXPECT_THROW(classify(z, kU, std::vector<double>{0.0}, Window(-2.0, 2.0), 1.0), Error);
}

TEST(CutAndProject, CoveringRadiusShrinksAsEpsilonGrows) {
  const auto s = fibonacci_scheme();
  const auto mu = cps_comb(s, fibonacci_tent(), Window(-80.0, 80.0));
  PeriodOptions opt;
  opt.snap_candidates = lattice_translates(s, -31.0, 31.0, 0.1);
  const auto d = norm_distances(mu, kU, Window(-30.0, 30.0), 0.125, opt);
  double prev = INFINITY;
  for (double eps : {0.1, 0.2, 0.4, 0.8}) {
    const auto ps = threshold(d, eps, Window(-30.0, 30.0), 0.125);
    EXPECT_LE(ps.covering_radius, prev);
    prev = ps.covering_radius;
  }
  EXPECT_LT(prev, 30.0);
}
