#pragma once

#include <span>
#include <vector>

#include "apmeas/window.hpp"

namespace apmeas {

/// Continuous, compactly supported, piecewise-linear function on the line.
/// Zero at the first and last breakpoint and identically zero outside them.
class TestFunction {
 public:
  TestFunction() = default;
  TestFunction(std::vector<double> breakpoints, std::vector<cplx> values);

  /// Unit hat on [a, c] peaking at b with the given height.
  static TestFunction hat(double a, double b, double c, cplx height = 1.0);
  /// Trapezoid: 0 at a, `height` on [b, c], 0 at d.
  static TestFunction trapezoid(double a, double b, double c, double d, cplx height = 1.0);

  const std::vector<double>& breakpoints() const noexcept { return xs_; }
  const std::vector<cplx>& values() const noexcept { return vals_; }
  bool is_zero() const noexcept;

  cplx operator()(double x) const noexcept;

  /// Exact for piecewise-linear functions: max over breakpoint values.
  double sup_norm() const noexcept;

  /// Closed hull [first, last] of the breakpoints ({0,0} for the zero function).
  ClosedInterval support() const noexcept;

  /// Lipschitz constant (max slope modulus).
  double lipschitz() const noexcept;

  /// |g| <= 1_U pointwise: g vanishes outside U and sup-norm <= 1.
  bool in_unit_family(const Window& U) const noexcept;

  /// Exact integral of g over [u, v] (any order-respecting u <= v).
  cplx integral(double u, double v) const noexcept;

  /// (T_t g)(x) = g(x - t).
  TestFunction translated(double t) const;
  /// g†(x) = g(-x).
  TestFunction reflected() const;
  TestFunction scaled(cplx c) const;
  TestFunction conjugated() const;

  /// Pointwise sum; the result is piecewise linear on the merged breakpoints.
  friend TestFunction operator+(const TestFunction& a, const TestFunction& b);
  friend TestFunction operator-(const TestFunction& a, const TestFunction& b);

 private:
  void build_prefix();

  std::vector<double> xs_;
  std::vector<cplx> vals_;
  std::vector<cplx> prefix_;  // integral from xs_[0] to xs_[i]
};

using WeightFunction = TestFunction;

/// Hats and adjacent signed differences on the dyadic grid of 2^depth cells
/// inside U. All members lie in the unit family of U and have sup-norm 1.
std::vector<TestFunction> canonical_family(const Window& U, int depth);

std::vector<TestFunction> reflect_all(std::span<const TestFunction> family);

}  // namespace apmeas
