#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "apmeas/measure.hpp"
#include "apmeas/test_function.hpp"

namespace apmeas {

/// Samples of a continuous function at origin + i*step, valid on `validity`.
struct SampledFunction {
  double origin = 0.0;
  double step = 1.0;
  std::vector<cplx> samples;
  ClosedInterval validity{0.0, 0.0};

  double x(std::size_t i) const noexcept { return origin + static_cast<double>(i) * step; }
  std::size_t size() const noexcept { return samples.size(); }
  /// Max modulus over samples whose abscissa lies in the validity window.
  double sup_norm() const noexcept;
};

/// Closed range of x for which x - supp(f) stays inside the truncation of mu
/// (everything when mu is finite).
ClosedInterval convolution_safe_range(const Measure& mu, const TestFunction& f);

/// (mu * f)(x) = mu(y -> f(x - y)) at each x. Throws EdgeContamination.
std::vector<cplx> convolve_at(const Measure& mu, const TestFunction& f, std::span<const double> xs);

/// mu * f on the grid origin + i*step, i < count. Throws EdgeContamination.
SampledFunction convolve_mf(const Measure& mu, const TestFunction& f, double origin, double step,
                            std::size_t count);

struct MeasureConvolution {
  Measure measure;
  /// |nu|(R) and the hull of supp(nu): ||mu*nu||_U <= ||mu||_{U - supp nu} |nu|(R).
  double convolver_mass = 0.0;
  ClosedInterval convolver_hull{0.0, 0.0};
};

/// mu * nu for finite nu, component by component. The truncation shrinks by
/// the support of nu. Throws NonFiniteConvolver, TruncationTooSmall.
MeasureConvolution convolve_mm(const Measure& mu, const Measure& nu);

/// ||(mu_n - mu) * g||_inf over the common safe range. Throws EdgeContamination.
double product_convergence_defect(const Measure& mu_n, const Measure& mu, const TestFunction& g);

/// A_n = (-r_n, r_n) with strictly increasing radii.
class VanHoveSequence {
 public:
  explicit VanHoveSequence(std::vector<double> radii);
  /// r_n = n for n = 1..count.
  static VanHoveSequence integers(std::size_t count);

  std::size_t size() const noexcept { return radii_.size(); }
  /// A_n for 1-based n.
  Window set(std::size_t n) const;
  double radius(std::size_t n) const;

 private:
  std::vector<double> radii_;
};

/// |boundary^K A_n| / |A_n|, exact.
double boundary_ratio(const VanHoveSequence& vh, const ClosedInterval& K, std::size_t n);

/// (1/|A_n|) mu|A_n * nu|A_n. Throws TruncationTooSmall.
Measure eberlein(const Measure& mu, const Measure& nu, const VanHoveSequence& vh, std::size_t n);

}  // namespace apmeas
