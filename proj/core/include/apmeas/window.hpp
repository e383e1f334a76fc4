#pragma once

#include <complex>

namespace apmeas {

using cplx = std::complex<double>;

/// Open bounded interval (lo, hi). Serves as norming set and as the
/// truncation region of a realized measure.
class Window {
 public:
  Window(double lo, double hi);

  double lo() const noexcept { return lo_; }
  double hi() const noexcept { return hi_; }
  double length() const noexcept { return hi_ - lo_; }
  double mid() const noexcept { return 0.5 * (lo_ + hi_); }

  /// Open-interval membership; endpoints are excluded.
  bool contains(double x) const noexcept { return lo_ < x && x < hi_; }
  /// True if `inner` (open) is a subset of *this (open).
  bool contains(const Window& inner) const noexcept {
    return lo_ <= inner.lo_ && inner.hi_ <= hi_;
  }

  Window shifted(double t) const { return Window(lo_ + t, hi_ + t); }
  Window reflected() const { return Window(-hi_, -lo_); }

  friend bool operator==(const Window&, const Window&) = default;

 private:
  double lo_;
  double hi_;
};

/// Closed interval [lo, hi], lo <= hi (degenerate allowed).
struct ClosedInterval {
  double lo = 0.0;
  double hi = 0.0;
  double length() const noexcept { return hi - lo; }
};

}  // namespace apmeas
