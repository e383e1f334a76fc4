#include "apmeas/diffraction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "apmeas/error.hpp"
#include "apmeas/parallel.hpp"

namespace apmeas {

std::string to_string(Taper t) { return t == Taper::None ? "none" : "triangular"; }

Measure autocorrelation(const Measure& omega, const VanHoveSequence& vh, std::size_t n) {
  const Window A = vh.set(n);
  if (omega.truncation() && !omega.truncation()->contains(A)) {
    throw Error(ErrorCode::TruncationTooSmall, "averaging set leaves the realized region");
  }
  const Measure a = restrict(omega, A).with_truncation(std::nullopt);
  const Measure b = reflect(conjugate(a));
  return scale(convolve_mm(a, b).measure, 1.0 / A.length());
}

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// integral over [u, v] of (alpha + beta x) e^{-2 pi i k x}
cplx linear_exp_integral(double u, double v, double alpha, double beta, double k) {
  const double w = -kTwoPi * k;
  const double len = v - u;
  if (std::abs(w * len) < 1e-2) {
    // 3-point Gauss-Legendre, exact to O((w len)^6).
    static const double nodes[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
    static const double weights[3] = {5.0 / 9.0, 8.0 / 9.0, 5.0 / 9.0};
    cplx acc{};
    const double mid = 0.5 * (u + v);
    for (int i = 0; i < 3; ++i) {
      const double x = mid + 0.5 * len * nodes[i];
      acc += weights[i] * (alpha + beta * x) * std::polar(1.0, w * x);
    }
    return 0.5 * len * acc;
  }
  const cplx iw{0.0, w};
  auto prim = [&](double x) {
    const cplx e = std::polar(1.0, w * x);
    // d/dx [e (a + b x)/(i w) + b e/w^2] = e (a + b x)
    return e * (alpha + beta * x) / iw + beta * e / (w * w);
  };
  return prim(v) - prim(u);
}

}  // namespace

Spectrum fourier(const Measure& gamma, double fmin, double fmax, double fstep, Taper taper,
                 double taper_halfwidth) {
  if (!(fstep > 0.0) || !(fmax >= fmin)) throw Error(ErrorCode::InvalidArgument, "frequency grid needs fstep > 0, fmax >= fmin");
  if (!gamma.is_finite()) throw Error(ErrorCode::InvalidArgument, "fourier needs a finite measure");
  double R = taper_halfwidth;
  if (taper == Taper::Triangular && !(R > 0.0)) {
    const auto h = gamma.support_hull();
    R = std::max(std::abs(h.lo), std::abs(h.hi));
    if (!(R > 0.0)) R = 1.0;
  }
  auto tap = [&](double x) { return taper == Taper::None ? 1.0 : std::max(0.0, 1.0 - std::abs(x) / R); };

  std::vector<Atom> atoms = gamma.pp().atoms();
  atoms.insert(atoms.end(), gamma.sc().realized_atoms().begin(), gamma.sc().realized_atoms().end());
  for (auto& a : atoms) a.weight *= tap(a.pos);

  // Density cells split at the taper kinks, each with a linear taper factor.
  struct Piece {
    double u, v;
    cplx f;
    double alpha, beta;
  };
  std::vector<Piece> pieces;
  const auto& ac = gamma.ac();
  for (std::size_t k = 0; k < ac.size(); ++k) {
    const auto c = ac.cell(k);
    if (!(c.lo < c.hi) || ac.samples()[k] == cplx{}) continue;
    std::vector<double> cuts{c.lo};
    if (taper == Taper::Triangular) {
      for (double kink : {-R, 0.0, R}) {
        if (kink > c.lo && kink < c.hi) cuts.push_back(kink);
      }
    }
    cuts.push_back(c.hi);
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
      const double u = cuts[i];
      const double v = cuts[i + 1];
      const double m = 0.5 * (u + v);
      if (taper == Taper::None) {
        pieces.push_back({u, v, ac.samples()[k], 1.0, 0.0});
      } else if (std::abs(m) < R) {
        const double beta = m < 0.0 ? 1.0 / R : -1.0 / R;
        pieces.push_back({u, v, ac.samples()[k], 1.0, beta});
      }
    }
  }

  Spectrum s;
  s.fmin = fmin;
  s.fstep = fstep;
  const auto n = static_cast<std::size_t>(std::floor((fmax - fmin) / fstep + 1e-9)) + 1;
  std::vector<double> raw(n);
  parallel_for(n, [&](std::size_t i) {
    const double k = fmin + static_cast<double>(i) * fstep;
    cplx acc{};
    for (const auto& a : atoms) acc += a.weight * std::polar(1.0, -kTwoPi * k * a.pos);
    for (const auto& p : pieces) acc += p.f * linear_exp_integral(p.u, p.v, p.alpha, p.beta, k);
    raw[i] = acc.real();
  });
  s.min_raw = raw.empty() ? 0.0 : *std::min_element(raw.begin(), raw.end());
  s.intensity.resize(n);
  for (std::size_t i = 0; i < n; ++i) s.intensity[i] = std::max(0.0, raw[i]);
  return s;
}

PeakSplit peak_split(const Spectrum& s, double threshold) {
  PeakSplit out;
  const auto& I = s.intensity;
  double total = 0.0;
  for (double v : I) total += v * s.fstep;
  double peak_mass = 0.0;
  std::size_t i = 0;
  while (i < I.size()) {
    if (!(I[i] >= threshold)) {
      out.continuous_floor = std::max(out.continuous_floor, I[i]);
      ++i;
      continue;
    }
    std::size_t j = i;
    std::size_t arg = i;
    double mass = 0.0;
    while (j < I.size() && I[j] >= threshold) {
      if (I[j] > I[arg]) arg = j;
      mass += I[j] * s.fstep;
      ++j;
    }
    out.peaks.push_back({s.freq(arg), I[arg], mass});
    peak_mass += mass;
    i = j;
  }
  out.pp_mass_fraction = total > 0.0 ? std::clamp(peak_mass / total, 0.0, 1.0) : 0.0;
  return out;
}

std::vector<double> periodogram(const Measure& omega, const Window& window, double fmin, double fmax,
                                double fstep) {
  if (!(fstep > 0.0) || !(fmax >= fmin)) throw Error(ErrorCode::InvalidArgument, "frequency grid needs fstep > 0, fmax >= fmin");
  std::vector<Atom> atoms;
  for (const auto& a : omega.pp().atoms()) {
    if (window.contains(a.pos)) atoms.push_back(a);
  }
  const auto n = static_cast<std::size_t>(std::floor((fmax - fmin) / fstep + 1e-9)) + 1;
  std::vector<double> out(n);
  parallel_for(n, [&](std::size_t i) {
    const double k = fmin + static_cast<double>(i) * fstep;
    cplx acc{};
    for (const auto& a : atoms) acc += a.weight * std::polar(1.0, -kTwoPi * k * a.pos);
    out[i] = std::norm(acc) / window.length();
  });
  return out;
}

std::vector<double> top_peak_positions(const std::vector<double>& values, double fmin, double fstep,
                                       std::size_t k) {
  std::vector<std::size_t> maxima;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double left = i > 0 ? values[i - 1] : -INFINITY;
    const double right = i + 1 < values.size() ? values[i + 1] : -INFINITY;
    if (values[i] > left && values[i] >= right) maxima.push_back(i);
  }
  std::stable_sort(maxima.begin(), maxima.end(),
                   [&](std::size_t a, std::size_t b) { return values[a] > values[b]; });
  if (maxima.size() > k) maxima.resize(k);
  std::vector<double> out;
  out.reserve(maxima.size());
  for (auto i : maxima) out.push_back(fmin + static_cast<double>(i) * fstep);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace apmeas
