#include "apmeas/test_function.hpp"

#include <algorithm>
#include <cmath>

#include "apmeas/error.hpp"

namespace apmeas {

TestFunction::TestFunction(std::vector<double> breakpoints, std::vector<cplx> values)
    : xs_(std::move(breakpoints)), vals_(std::move(values)) {
  if (xs_.size() != vals_.size()) {
    throw Error(ErrorCode::InvalidArgument, "breakpoints and values differ in length");
  }
  if (xs_.size() == 1) {
    throw Error(ErrorCode::InvalidArgument, "a test function needs at least two breakpoints");
  }
  for (std::size_t i = 0; i < xs_.size(); ++i) {
    if (!std::isfinite(xs_[i]) || !std::isfinite(vals_[i].real()) ||
        !std::isfinite(vals_[i].imag())) {
      throw Error(ErrorCode::InvalidArgument, "non-finite breakpoint or value");
    }
    if (i > 0 && !(xs_[i - 1] < xs_[i])) {
      throw Error(ErrorCode::InvalidArgument, "breakpoints must be strictly increasing");
    }
  }
  if (!xs_.empty() && (vals_.front() != cplx{} || vals_.back() != cplx{})) {
    throw Error(ErrorCode::InvalidArgument,
                "test function must vanish at its first and last breakpoint");
  }
  build_prefix();
}

void TestFunction::build_prefix() {
  prefix_.assign(xs_.size(), cplx{});
  for (std::size_t i = 1; i < xs_.size(); ++i) {
    prefix_[i] = prefix_[i - 1] + 0.5 * (xs_[i] - xs_[i - 1]) * (vals_[i - 1] + vals_[i]);
  }
}

TestFunction TestFunction::hat(double a, double b, double c, cplx height) {
  return TestFunction({a, b, c}, {0.0, height, 0.0});
}

TestFunction TestFunction::trapezoid(double a, double b, double c, double d, cplx height) {
  if (b == c) return hat(a, b, d, height);
  return TestFunction({a, b, c, d}, {0.0, height, height, 0.0});
}

bool TestFunction::is_zero() const noexcept {
  return std::all_of(vals_.begin(), vals_.end(), [](cplx v) { return v == cplx{}; });
}

cplx TestFunction::operator()(double x) const noexcept {
  if (xs_.empty() || !(x > xs_.front()) || !(x < xs_.back())) return {};
  auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
  double lam = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
  return vals_[i] + lam * (vals_[i + 1] - vals_[i]);
}

double TestFunction::sup_norm() const noexcept {
  double m = 0.0;
  for (const auto& v : vals_) m = std::max(m, std::abs(v));
  return m;
}

ClosedInterval TestFunction::support() const noexcept {
  if (xs_.empty()) return {0.0, 0.0};
  return {xs_.front(), xs_.back()};
}

double TestFunction::lipschitz() const noexcept {
  double m = 0.0;
  for (std::size_t i = 1; i < xs_.size(); ++i) {
    m = std::max(m, std::abs(vals_[i] - vals_[i - 1]) / (xs_[i] - xs_[i - 1]));
  }
  return m;
}

bool TestFunction::in_unit_family(const Window& U) const noexcept {
  if (xs_.empty()) return true;
  // g vanishes at both ends, so the nonzero set is inside (first, last).
  if (xs_.front() < U.lo() || xs_.back() > U.hi()) return false;
  return sup_norm() <= 1.0;
}

cplx TestFunction::integral(double u, double v) const noexcept {
  if (xs_.empty() || !(u < v)) return {};
  auto antider = [this](double x) -> cplx {
    if (x <= xs_.front()) return {};
    if (x >= xs_.back()) return prefix_.back();
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - xs_.begin()) - 1;
    double lam = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
    cplx gx = vals_[i] + lam * (vals_[i + 1] - vals_[i]);
    return prefix_[i] + 0.5 * (x - xs_[i]) * (vals_[i] + gx);
  };
  return antider(v) - antider(u);
}

TestFunction TestFunction::translated(double t) const {
  TestFunction out = *this;
  for (auto& x : out.xs_) x = x + t;
  out.build_prefix();
  return out;
}

TestFunction TestFunction::reflected() const {
  TestFunction out;
  out.xs_.reserve(xs_.size());
  out.vals_.reserve(vals_.size());
  for (std::size_t i = xs_.size(); i-- > 0;) {
    out.xs_.push_back(-xs_[i]);
    out.vals_.push_back(vals_[i]);
  }
  out.build_prefix();
  return out;
}

TestFunction TestFunction::scaled(cplx c) const {
  TestFunction out = *this;
  for (auto& v : out.vals_) v *= c;
  out.build_prefix();
  return out;
}

TestFunction TestFunction::conjugated() const {
  TestFunction out = *this;
  for (auto& v : out.vals_) v = std::conj(v);
  out.build_prefix();
  return out;
}

namespace {

TestFunction combine(const TestFunction& a, const TestFunction& b, double sign) {
  if (a.is_zero() && b.is_zero()) return {};
  std::vector<double> xs;
  xs.reserve(a.breakpoints().size() + b.breakpoints().size());
  std::merge(a.breakpoints().begin(), a.breakpoints().end(), b.breakpoints().begin(),
             b.breakpoints().end(), std::back_inserter(xs));
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<cplx> vals;
  vals.reserve(xs.size());
  for (double x : xs) vals.push_back(a(x) + sign * b(x));
  return TestFunction(std::move(xs), std::move(vals));
}

}  // namespace

TestFunction operator+(const TestFunction& a, const TestFunction& b) { return combine(a, b, 1.0); }
TestFunction operator-(const TestFunction& a, const TestFunction& b) { return combine(a, b, -1.0); }

std::vector<TestFunction> canonical_family(const Window& U, int depth) {
  if (depth < 1 || depth > 20) {
    throw Error(ErrorCode::InvalidArgument, "canonical family depth must be in [1, 20]");
  }
  const int cells = 1 << depth;
  const double h = U.length() / cells;
  auto node = [&](int j) { return j == cells ? U.hi() : U.lo() + j * h; };

  std::vector<TestFunction> family;
  family.reserve(2 * cells);
  for (int j = 1; j < cells; ++j) {
    family.push_back(TestFunction::hat(node(j - 1), node(j), node(j + 1)));
  }
  // phi_j - phi_{j+1}: +1 at node j, -1 at node j+1.
  for (int j = 1; j + 1 < cells; ++j) {
    family.push_back(TestFunction({node(j - 1), node(j), node(j + 1), node(j + 2)},
                                  {0.0, 1.0, -1.0, 0.0}));
  }
  return family;
}

std::vector<TestFunction> reflect_all(std::span<const TestFunction> family) {
  std::vector<TestFunction> out;
  out.reserve(family.size());
  for (const auto& g : family) out.push_back(g.reflected());
  return out;
}

}  // namespace apmeas
