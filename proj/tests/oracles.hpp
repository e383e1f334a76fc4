#pragma once

// Brute-force reference computations that share no code with the library
// kernels beyond reading a measure's parts.

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "apmeas/measure.hpp"
#include "apmeas/test_function.hpp"

namespace oracle {

using apmeas::cplx;

struct Flat {
  std::vector<apmeas::Atom> atoms;  // pp and realized sc together
  struct Cell {
    double lo, hi;
    cplx f;
  };
  std::vector<Cell> cells;
};

inline Flat flatten(const apmeas::Measure& mu) {
  Flat out;
  out.atoms = mu.pp().atoms();
  for (const auto& a : mu.sc().realized_atoms()) out.atoms.push_back(a);
  const auto& ac = mu.ac();
  for (std::size_t k = 0; k < ac.size(); ++k) {
    const auto c = ac.cell(k);
    if (c.lo < c.hi) out.cells.push_back({c.lo, c.hi, ac.samples()[k]});
  }
  return out;
}

// |mu|((x + a, x + b)) by direct summation.
inline double window_mass(const Flat& m, double x, double a, double b) {
  double s = 0.0;
  for (const auto& at : m.atoms) {
    if (x + a < at.pos && at.pos < x + b) s += std::abs(at.weight);
  }
  for (const auto& c : m.cells) {
    const double lo = std::max(c.lo, x + a);
    const double hi = std::min(c.hi, x + b);
    if (hi > lo) s += (hi - lo) * std::abs(c.f);
  }
  return s;
}

// sup_x |mu|(x + U). The function is piecewise linear in x between the points
// where an atom or a cell edge meets a window edge; just inside each of those
// points the value is a one-sided limit, so evaluate at offsets of +-eta.
inline double norm_U(const apmeas::Measure& mu, double a, double b, double eta = 1e-9) {
  const auto m = flatten(mu);
  std::vector<double> xs;
  for (const auto& at : m.atoms) {
    xs.push_back(at.pos - a);
    xs.push_back(at.pos - b);
  }
  for (const auto& c : m.cells) {
    for (double e : {c.lo, c.hi}) {
      xs.push_back(e - a);
      xs.push_back(e - b);
    }
  }
  double best = 0.0;
  for (double x : xs) {
    for (double d : {-eta, eta}) best = std::max(best, window_mass(m, x + d, a, b));
  }
  return best;
}

// mu(g); each density cell is split at the kinks of g and integrated by the
// trapezoid rule, which is exact on every linear piece.
inline cplx pairing(const apmeas::Measure& mu, const apmeas::TestFunction& g) {
  const auto m = flatten(mu);
  cplx s{};
  for (const auto& at : m.atoms) s += at.weight * g(at.pos);
  for (const auto& c : m.cells) {
    std::vector<double> cuts{c.lo};
    for (double x : g.breakpoints()) {
      if (x > c.lo && x < c.hi) cuts.push_back(x);
    }
    cuts.push_back(c.hi);
    cplx acc{};
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      acc += (g(cuts[i]) + g(cuts[i + 1])) * (0.5 * (cuts[i + 1] - cuts[i]));
    }
    s += c.f * acc;
  }
  return s;
}

// (mu * f)(x) = mu(y -> f(x - y)).
inline cplx convolve_at(const apmeas::Measure& mu, const apmeas::TestFunction& f, double x) {
  return oracle::pairing(mu, f.reflected().translated(x));
}

// Sup over x in the domain with x - t also present of |F(x) - F(x - t)|, for
// samples F[i] at origin + i * step and t = k * step.
inline double uniform_distance(const std::vector<cplx>& F, long long k, std::size_t i0, std::size_t i1) {
  double best = 0.0;
  for (std::size_t i = i0; i < i1; ++i) {
    const long long j = static_cast<long long>(i) - k;
    if (j < 0 || j >= static_cast<long long>(F.size())) continue;
    best = std::max(best, std::abs(F[i] - F[static_cast<std::size_t>(j)]));
  }
  return best;
}

// |sum w e^{-2 pi i k x}|^2 / L.
inline double periodogram_at(const std::vector<apmeas::Atom>& atoms, double k, double L) {
  cplx s{};
  for (const auto& a : atoms) s += a.weight * std::polar(1.0, -2.0 * M_PI * k * a.pos);
  return std::norm(s) / L;
}

}  // namespace oracle
