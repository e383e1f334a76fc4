#pragma once

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "apmeas/measure.hpp"
#include "apmeas/test_function.hpp"

namespace apmeas {

using GalleryParams = std::map<std::string, double>;

/// Names: ex1(n), leb01, triangle(n), cantor(depth), scaledcantor(n, depth),
/// dirac_comb(spacing, offset, weight, lo, hi), ex3(M), ex8(M).
/// Throws UnknownGalleryName, BadParams.
Measure gallery(const std::string& name, const GalleryParams& params = {});

std::vector<std::string> gallery_names();

/// (1/n) sum_{k=1..n} delta_{k/n}.
Measure ex1_measure(int n);
/// Lebesgue measure on [0, 1].
Measure leb01();
/// max(n - n^2 |x|, 0) as cell averages on 64 n cells.
Measure triangle_measure(int n);
/// Middle-thirds Cantor measure on [0, 1] realized at the given depth.
Measure cantor_measure(int depth);
/// Pushforward of the Cantor measure under x -> x / n.
Measure scaled_cantor_measure(int n, int depth);

using ComponentGenerator = std::function<Measure(int j)>;

struct DyadicComposite {
  Measure omega;
  int level = 0;
  /// tail_defect[j - 1] = max over the defect family of ||(mu_j - base) * g||_inf.
  std::vector<double> tail_defect;
};

/// base + sum_{j=1..M} delta_{2^j + 2^{j+1} Z} * mu_j realized on
/// (-2^{M+1}, 2^{M+1}). Components must be finite and supported in [-1, 1].
/// Densities are resampled onto one grid of the given step by exact cell
/// averages. Throws ComponentSupportViolation.
DyadicComposite dyadic_composite(const ComponentGenerator& gen, const Measure& base, int M,
                                 std::span<const TestFunction> defect_family, double density_step = 1.0 / 256);

struct CertifiedLevel {
  int N = 0;
  int realized_N = 0;  // from the measured defects j <= M
  int tail_N = 0;      // from the analytic bound L / j for j > M
  double bound = 0.0;  // epsilon / (4 R + 2)
};

/// Smallest N such that every j > N has defect below epsilon / (4R + 2), with
/// supp f in [-R, R] and the analytic tail L / j beyond the realized level.
CertifiedLevel certify_level(const DyadicComposite& dc, double epsilon, double support_radius, double lipschitz);

struct CutAndProjectScheme {
  double b1[2] = {1.0, 1.0};
  double b2[2] = {0.0, 0.0};
  ClosedInterval internal_window{0.0, 0.0};

  double covolume() const noexcept;
  /// Internal coordinate of the lattice point with physical coordinate
  /// m b1[0] + n b2[0].
  double star(long long m, long long n) const noexcept;
  double physical(long long m, long long n) const noexcept;
};

/// b1 = (1, 1), b2 = (tau, 1 - tau), window [-1, tau - 1].
CutAndProjectScheme fibonacci_scheme();

/// The tent weight h(-1, 0, tau - 1) on the internal line.
WeightFunction fibonacci_tent();

/// Lattice coefficient range needed for (window x supp h).
long long required_range(const CutAndProjectScheme& s, const WeightFunction& h, const Window& window);

/// sum over lattice points with x in the window of h(x*) delta_x, truncated
/// to the window. A supplied range smaller than required throws
/// GenerationRangeTooSmall.
Measure cps_comb(const CutAndProjectScheme& s, const WeightFunction& h, const Window& window,
                 std::optional<long long> range = std::nullopt);

/// Physical positions of lattice points with x in [lo, hi] and x* in the
/// internal window, sorted.
std::vector<double> model_set_points(const CutAndProjectScheme& s, double lo, double hi);

/// Lattice translates (physical coordinates) in [lo, hi] whose internal
/// coordinate has modulus at most star_radius, sorted. Used as snap candidates
/// for almost-period scans.
std::vector<double> lattice_translates(const CutAndProjectScheme& s, double lo, double hi, double star_radius);

}  // namespace apmeas
