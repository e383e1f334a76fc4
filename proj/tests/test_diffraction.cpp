#include <gtest/gtest.h>

#include <cmath>

#include "apmeas/constructions.hpp"
#include "apmeas/diffraction.hpp"
#include "apmeas/error.hpp"
#include "oracles.hpp"

using namespace apmeas;

namespace {

Measure integers(int lo, int hi) {
  std::vector<Atom> atoms;
  for (int n = lo + 1; n < hi; ++n) atoms.push_back({static_cast<double>(n), 1.0});
  return Measure::from_atoms(std::move(atoms), Window(lo, hi));
}

}  // namespace

TEST(Fourier, DiracIsFlat) {
  const auto s = fourier(Measure::from_atoms({{0.0, 1.0}}), -3.0, 3.0, 0.01, Taper::None);
  ASSERT_EQ(s.intensity.size(), 601u);
  for (double v : s.intensity) EXPECT_DOUBLE_EQ(v, 1.0);
  EXPECT_DOUBLE_EQ(s.min_raw, 1.0);
}

TEST(Fourier, LebesgueOnUnitInterval) {
  // |hat 1_[0,1](k)| = |sin pi k / pi k|; the real part is sin 2 pi k / 2 pi k.
  const auto s = fourier(leb01(), 0.25, 3.25, 0.25, Taper::None);
  for (std::size_t i = 0; i < s.intensity.size(); ++i) {
    const double k = s.freq(i);
    EXPECT_NEAR(s.intensity[i], std::max(0.0, std::sin(2.0 * M_PI * k) / (2.0 * M_PI * k)), 1e-12) << k;
  }
}

TEST(Fourier, RejectsBadInput) {
  const auto d = Measure::from_atoms({{0.0, 1.0}});
  EXPECT_THROW(fourier(d, 1.0, 0.0, 0.1), Error);
  EXPECT_THROW(fourier(d, 0.0, 1.0, 0.0), Error);
  EXPECT_THROW(fourier(integers(-5, 5), 0.0, 1.0, 0.1), Error);
}

TEST(Autocorrelation, IntegerCombWeights) {
  const auto g = autocorrelation(integers(-60, 60), VanHoveSequence({50.0}), 1);
  EXPECT_TRUE(g.is_finite());
  const auto& atoms = g.pp().atoms();
  ASSERT_EQ(atoms.size(), 197u);
  for (const auto& a : atoms) EXPECT_NEAR(a.weight.real(), (99.0 - std::abs(a.pos)) / 100.0, 1e-15);
}

TEST(Autocorrelation, IsPositiveDefiniteSymmetric) {
  const auto s = fibonacci_scheme();
  const auto comb = cps_comb(s, fibonacci_tent(), Window(-40.0, 40.0));
  const auto g = autocorrelation(comb, VanHoveSequence({30.0}), 1);
  const auto r = reflect(conjugate(g));
  const auto& a = g.pp().atoms();
  const auto& b = r.pp().atoms();
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_NEAR(a[i].pos, b[i].pos, 1e-12);
    EXPECT_NEAR(std::abs(a[i].weight - b[i].weight), 0.0, 1e-12);
  }
  const auto sp = fourier(g, -2.0, 2.0, 0.01, Taper::None);
  EXPECT_GE(sp.min_raw, -1e-9);
}

TEST(Autocorrelation, ZeroMeasure) {
  const Measure zero = Measure::from_atoms({}, Window(-10.0, 10.0));
  const auto g = autocorrelation(zero, VanHoveSequence({5.0}), 1);
  EXPECT_TRUE(g.is_zero());
  const auto s = fourier(g, 0.0, 1.0, 0.1);
  for (double v : s.intensity) EXPECT_EQ(v, 0.0);
  EXPECT_EQ(peak_split(s, 1e-3).pp_mass_fraction, 0.0);
}

TEST(Autocorrelation, AveragingSetMustFit) {
  EXPECT_THROW(autocorrelation(integers(-10, 10), VanHoveSequence({20.0}), 1), Error);
}

TEST(PeakSplit, IntegerLatticeBraggPeaks) {
  const auto g = autocorrelation(integers(-60, 60), VanHoveSequence({50.0}), 1);
  const auto s = fourier(g, 0.5, 3.5, 1e-3);
  const double top = *std::max_element(s.intensity.begin(), s.intensity.end());
  const auto split = peak_split(s, 1e-3 * top);
  ASSERT_EQ(split.peaks.size(), 3u);
  for (int k = 1; k <= 3; ++k) {
    EXPECT_NEAR(split.peaks[k - 1].freq, k, 1e-9);
    EXPECT_NEAR(split.peaks[k - 1].intensity, 1.0, 0.05);
  }
  EXPECT_GE(split.pp_mass_fraction, 0.95);
  // Between peaks the tapered transform is negligible.
  for (double h : {0.5, 1.5, 2.5, 3.5}) {
    const auto i = static_cast<std::size_t>(std::llround((h - 0.5) / 1e-3));
    EXPECT_LE(s.intensity[i], 0.02 * top) << h;
  }
}

TEST(PeakSplit, ThresholdAboveEverythingFindsNothing) {
  const auto s = fourier(Measure::from_atoms({{0.0, 1.0}}), 0.0, 1.0, 0.1, Taper::None);
  const auto split = peak_split(s, 2.0);
  EXPECT_TRUE(split.peaks.empty());
  EXPECT_EQ(split.pp_mass_fraction, 0.0);
  EXPECT_DOUBLE_EQ(split.continuous_floor, 1.0);
}

TEST(PeakSplit, FlatSpectrumIsOnePeak) {
  const auto s = fourier(Measure::from_atoms({{0.0, 1.0}}), 0.0, 1.0, 0.1, Taper::None);
  const auto split = peak_split(s, 0.5);
  ASSERT_EQ(split.peaks.size(), 1u);
  EXPECT_DOUBLE_EQ(split.pp_mass_fraction, 1.0);
  EXPECT_EQ(split.continuous_floor, 0.0);
}

TEST(Periodogram, MatchesDirectSum) {
  const auto s = fibonacci_scheme();
  const auto comb = cps_comb(s, fibonacci_tent(), Window(-50.0, 50.0));
  const Window W(-40.0, 40.0);
  std::vector<Atom> inside;
  for (const auto& a : comb.pp().atoms()) {
    if (W.contains(a.pos)) inside.push_back(a);
  }
  const auto pg = periodogram(comb, W, 0.0, 2.0, 0.05);
  for (std::size_t i = 0; i < pg.size(); ++i) {
    const double k = 0.05 * static_cast<double>(i);
    EXPECT_NEAR(pg[i], oracle::periodogram_at(inside, k, W.length()), 1e-9 * (1.0 + pg[i]));
  }
}

TEST(Periodogram, TopPeakPositions) {
  const std::vector<double> v{0.0, 3.0, 1.0, 5.0, 2.0, 2.0, 4.0, 0.0};
  EXPECT_EQ(top_peak_positions(v, 10.0, 0.5, 2), (std::vector<double>{11.5, 13.0}));
  EXPECT_EQ(top_peak_positions(v, 0.0, 1.0, 10).size(), 3u);
}

TEST(Fibonacci, BraggFractionGrowsWithWindow) {
  const auto s = fibonacci_scheme();
  const auto comb = cps_comb(s, fibonacci_tent(), Window(-210.0, 210.0));
  double prev = 0.0;
  for (double r : {50.0, 200.0}) {
    const auto sp = fourier(autocorrelation(comb, VanHoveSequence({r}), 1), 0.1, 2.0, 1e-3);
    const double top = *std::max_element(sp.intensity.begin(), sp.intensity.end());
    const double f = peak_split(sp, 1e-2 * top).pp_mass_fraction;
    EXPECT_GE(f, prev) << r;
    prev = f;
  }
  EXPECT_GE(prev, 0.9);
}
