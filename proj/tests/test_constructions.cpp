#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "apmeas/constructions.hpp"
#include "apmeas/error.hpp"
#include "apmeas/periods.hpp"

using namespace apmeas;

namespace {

const double kTau = (1.0 + std::sqrt(5.0)) / 2.0;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Gallery, Names) {
  const std::map<std::string, GalleryParams> params{
      {"ex1", {{"n", 2}}}, {"triangle", {{"n", 2}}}, {"scaledcantor", {{"n", 2}, {"depth", 3}}},
      {"ex3", {{"M", 3}}}, {"ex8", {{"M", 3}}}};
  for (const auto& name : gallery_names()) {
    const auto it = params.find(name);
    EXPECT_NO_THROW(gallery(name, it == params.end() ? GalleryParams{} : it->second)) << name;
  }
}

TEST(Gallery, AtomicAverages) {
  const auto mu = gallery("ex1", {{"n", 4}});
  const auto& a = mu.pp().atoms();
  ASSERT_EQ(a.size(), 4u);
  for (int k = 1; k <= 4; ++k) {
    EXPECT_EQ(a[k - 1].pos, k / 4.0);
    EXPECT_EQ(a[k - 1].weight, cplx(0.25));
  }
}

TEST(Gallery, TriangleAndCantorAreProbabilities) {
  EXPECT_NEAR(total_mass(gallery("triangle", {{"n", 2}})), 1.0, 1e-12);
  EXPECT_NEAR(total_mass(leb01()), 1.0, 1e-15);
  for (int d : {1, 4, 7}) {
    const auto c = cantor_measure(d);
    EXPECT_EQ(c.sc().realized_atoms().size(), std::size_t{1} << d);
    EXPECT_NEAR(total_mass(c), 1.0, 1e-12);
  }
  const auto s = scaled_cantor_measure(5, 4);
  const auto h = s.support_hull();
  EXPECT_GE(h.lo, 0.0);
  EXPECT_LE(h.hi, 0.2 + 1e-15);
}

TEST(Gallery, DiracComb) {
  const auto z = gallery("dirac_comb");
  EXPECT_EQ(z.pp().atoms().size(), 199u);
  ASSERT_TRUE(z.truncation());
  EXPECT_EQ(z.truncation()->lo(), -100.0);
  const auto h = gallery("dirac_comb", {{"spacing", 0.5}, {"offset", 0.25}, {"lo", -2}, {"hi", 2}});
  EXPECT_EQ(h.pp().atoms().size(), 8u);
  EXPECT_EQ(h.pp().atoms().front().pos, -1.75);
}

TEST(Gallery, Errors) {
  EXPECT_EQ(code_of([] { gallery("nope"); }), ErrorCode::UnknownGalleryName);
  EXPECT_EQ(code_of([] { gallery("ex1", {{"n", 0}}); }), ErrorCode::BadParams);
  EXPECT_EQ(code_of([] { gallery("ex1", {{"n", 2.5}}); }), ErrorCode::BadParams);
  EXPECT_EQ(code_of([] { gallery("ex3", {{"M", 13}}); }), ErrorCode::BadParams);
}

TEST(Composite, PlacesComponentsByTwoAdicValuation) {
  const auto omega = gallery("ex8", {{"M", 4}});
  ASSERT_TRUE(omega.truncation());
  EXPECT_EQ(omega.truncation()->hi(), 32.0);
  // Level j sits at 2^j times odd numbers with support radius 1 / j.
  for (int n = -30; n <= 30; n += 2) {
    EXPECT_NEAR(mass(omega, Window(n - 1.0, n + 1.0)), 1.0, 1e-9) << n;
    if (n % 4 == 0) EXPECT_NEAR(mass(omega, Window(n - 0.5, n + 0.5)), 1.0, 1e-9) << n;
  }
  EXPECT_NEAR(mass(omega, Window(-32.0, 32.0)), 31.0, 1e-9);
  EXPECT_EQ(omega.pp().atoms().size(), 1u);
  EXPECT_EQ(omega.pp().atoms()[0].pos, 0.0);
}

TEST(Composite, ConstantGeneratorIsPeriodic) {
  const auto d = Measure::from_atoms({{0.0, 1.0}});
  const auto dc = dyadic_composite([&](int) { return d; }, d, 5, canonical_family(Window(-1.0, 1.0), 2));
  for (double v : dc.tail_defect) EXPECT_EQ(v, 0.0);
  const auto ps = norm_periods(dc.omega, Window(0.0, 1.0), 0.1, Window(-8.0, 8.0), 1.0);
  std::vector<double> want;
  for (int k = -8; k <= 8; k += 2) want.push_back(k);
  EXPECT_EQ(ps.members, want);
}

TEST(Composite, RejectsWideComponents) {
  const auto d = Measure::from_atoms({{0.0, 1.0}});
  const auto far = Measure::from_atoms({{1.5, 1.0}});
  const auto fam = canonical_family(Window(-1.0, 1.0), 2);
  EXPECT_EQ(code_of([&] { dyadic_composite([&](int) { return far; }, d, 3, fam); }),
            ErrorCode::ComponentSupportViolation);
  const auto inf = Measure::from_atoms({{0.0, 1.0}}, Window(-1.0, 1.0));
  EXPECT_EQ(code_of([&] { dyadic_composite([&](int) { return inf; }, d, 3, fam); }),
            ErrorCode::ComponentSupportViolation);
}

TEST(Certify, DefectsFollowTheLipschitzBound) {
  const auto fam = canonical_family(Window(-1.0, 1.0), 3);
  double L = 0.0;
  for (const auto& g : fam) L = std::max(L, g.lipschitz());
  const auto dc = dyadic_composite(ex1_measure, leb01(), 6, fam);
  ASSERT_EQ(dc.tail_defect.size(), 6u);
  for (std::size_t j = 1; j <= 6; ++j) EXPECT_LE(dc.tail_defect[j - 1], L / j + 1e-12) << j;

  const auto c = certify_level(dc, 1.0, 1.0, L);
  EXPECT_DOUBLE_EQ(c.bound, 1.0 / 6.0);
  EXPECT_EQ(c.tail_N, static_cast<int>(std::floor(L / c.bound)));
  EXPECT_EQ(c.N, std::max(c.realized_N, c.tail_N));
  for (std::size_t j = c.realized_N + 1; j <= 6; ++j) EXPECT_LT(dc.tail_defect[j - 1], c.bound);

  // A bound loose enough that the tail is certified by the realized levels.
  const auto loose = certify_level(dc, 1e3, 1.0, L);
  EXPECT_EQ(loose.tail_N, 0);
  EXPECT_EQ(loose.N, loose.realized_N);
  EXPECT_EQ(code_of([&] { certify_level(dc, 0.0, 1.0, L); }), ErrorCode::BadParams);
}

TEST(CutAndProject, Scheme) {
  const auto s = fibonacci_scheme();
  EXPECT_NEAR(s.covolume(), std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(s.star(2, 3), 2.0 + 3.0 * (1.0 - kTau), 1e-12);
  EXPECT_NEAR(s.physical(2, 3), 2.0 + 3.0 * kTau, 1e-12);
}

TEST(CutAndProject, ModelSetGapsAndDensity) {
  // The closed window puts both -tau and -1 on its boundary; elsewhere the
  // gaps are 1 and tau.
  const auto edge = model_set_points(fibonacci_scheme(), -2.0, -0.5);
  EXPECT_TRUE(std::binary_search(edge.begin(), edge.end(), -1.0));
  EXPECT_TRUE(std::any_of(edge.begin(), edge.end(), [](double x) { return std::abs(x + kTau) < 1e-12; }));
  const auto pts = model_set_points(fibonacci_scheme(), 0.0, 400.0);
  ASSERT_GT(pts.size(), 2u);
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const double g = pts[i] - pts[i - 1];
    EXPECT_TRUE(std::abs(g - 1.0) < 1e-9 || std::abs(g - kTau) < 1e-9) << g;
  }
  const double density = static_cast<double>(pts.size()) / 400.0;
  EXPECT_NEAR(density, kTau / std::sqrt(5.0), 0.01);
}

TEST(CutAndProject, CombWeights) {
  const auto s = fibonacci_scheme();
  const auto comb = cps_comb(s, fibonacci_tent(), Window(-30.0, 30.0));
  double top = 0.0;
  for (const auto& a : comb.pp().atoms()) {
    EXPECT_GE(a.weight.real(), 0.0);
    EXPECT_LE(a.weight.real(), 1.0);
    top = std::max(top, a.weight.real());
  }
  EXPECT_EQ(top, 1.0);  // the origin has internal coordinate 0
  EXPECT_TRUE(cps_comb(s, WeightFunction{}, Window(-30.0, 30.0)).is_zero());
}

TEST(CutAndProject, GenerationRange) {
  const auto s = fibonacci_scheme();
  const Window w(-30.0, 30.0);
  const auto need = required_range(s, fibonacci_tent(), w);
  EXPECT_GT(need, 0);
  EXPECT_NO_THROW(cps_comb(s, fibonacci_tent(), w, need));
  EXPECT_EQ(code_of([&] { cps_comb(s, fibonacci_tent(), w, 1); }), ErrorCode::GenerationRangeTooSmall);
}

TEST(CutAndProject, LatticeTranslates) {
  const auto s = fibonacci_scheme();
  const auto t = lattice_translates(s, -30.0, 30.0, 0.1);
  EXPECT_TRUE(std::is_sorted(t.begin(), t.end()));
  EXPECT_TRUE(std::binary_search(t.begin(), t.end(), 0.0));
  for (double x : t) {
    EXPECT_TRUE(std::any_of(t.begin(), t.end(), [x](double y) { return std::abs(x + y) < 1e-9; })) << x;
  }
  // 8 + 13 tau has internal coordinate 8 - 13 / tau, about -0.034.
  const double x = s.physical(8, 13);
  EXPECT_TRUE(std::any_of(t.begin(), t.end(), [x](double y) { return std::abs(y - x) < 1e-9; }));
}
