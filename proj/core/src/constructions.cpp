#include "apmeas/constructions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "apmeas/convolution.hpp"
#include "apmeas/error.hpp"

namespace apmeas {

namespace {

constexpr double kTau = std::numbers::phi;

double param(const GalleryParams& p, const std::string& key, std::optional<double> fallback = std::nullopt) {
  auto it = p.find(key);
  if (it != p.end()) return it->second;
  if (fallback) return *fallback;
  throw Error(ErrorCode::BadParams, "missing parameter '" + key + "'");
}

int int_param(const GalleryParams& p, const std::string& key, int lo, int hi,
              std::optional<double> fallback = std::nullopt) {
  const double v = param(p, key, fallback);
  if (!std::isfinite(v) || v != std::floor(v) || v < lo || v > hi) {
    throw Error(ErrorCode::BadParams, "parameter '" + key + "' must be an integer in [" + std::to_string(lo) +
                                          ", " + std::to_string(hi) + "]");
  }
  return static_cast<int>(v);
}

int v2(long long n) {
  int k = 0;
  while (n % 2 == 0) {
    n /= 2;
    ++k;
  }
  return k;
}

}  // namespace

Measure ex1_measure(int n) {
  if (n < 1) throw Error(ErrorCode::BadParams, "ex1 needs n >= 1");
  std::vector<Atom> atoms;
  atoms.reserve(static_cast<std::size_t>(n));
  for (int k = 1; k <= n; ++k) atoms.push_back({static_cast<double>(k) / n, 1.0 / n});
  return Measure::from_atoms(std::move(atoms));
}

Measure leb01() { return Measure::from_density(DensityPart(0.0, 1.0, {1.0})); }

Measure triangle_measure(int n) {
  if (n < 1) throw Error(ErrorCode::BadParams, "triangle needs n >= 1");
  const int cells = 64;
  const double h = 1.0 / (static_cast<double>(cells) * n);
  std::vector<cplx> samples(2 * cells);
  for (int k = 0; k < 2 * cells; ++k) {
    // f is linear on each cell, so the cell average is the midpoint value.
    const double mid = -1.0 / n + (k + 0.5) * h;
    samples[static_cast<std::size_t>(k)] = std::max(0.0, n - static_cast<double>(n) * n * std::abs(mid));
  }
  return Measure::from_density(DensityPart(-1.0 / n, h, std::move(samples)));
}

Measure cantor_measure(int depth) {
  if (depth < 0 || depth > 20) throw Error(ErrorCode::BadParams, "cantor depth must be in [0, 20]");
  auto piece = SingularPiece::from_ifs({{1.0 / 3, 0.0, 0.5}, {1.0 / 3, 2.0 / 3, 0.5}}, depth, 1.0);
  return Measure::from_singular(SingularPart({piece}));
}

Measure scaled_cantor_measure(int n, int depth) {
  if (n < 1) throw Error(ErrorCode::BadParams, "scaledcantor needs n >= 1");
  const auto base = cantor_measure(depth);
  return Measure::from_singular(SingularPart({base.sc().pieces().front().dilated(1.0 / n)}));
}

// ---------------------------------------------------------------------------
// dyadic composite

DyadicComposite dyadic_composite(const ComponentGenerator& gen, const Measure& base, int M,
                                 std::span<const TestFunction> defect_family, double density_step) {
  if (M < 1 || M > 20) throw Error(ErrorCode::BadParams, "truncation level must be in [1, 20]");
  if (!(density_step > 0.0)) throw Error(ErrorCode::BadParams, "density step must be > 0");
  auto check = [](const Measure& m, const std::string& what) {
    if (!m.is_finite()) throw Error(ErrorCode::ComponentSupportViolation, what + " must be a finite measure");
    if (m.is_zero()) return;
    const auto h = m.support_hull();
    if (h.lo < -1.0 - 1e-12 || h.hi > 1.0 + 1e-12) {
      throw Error(ErrorCode::ComponentSupportViolation, what + " is not supported in [-1, 1]");
    }
  };
  check(base, "base");
  std::vector<Measure> comps;
  comps.reserve(static_cast<std::size_t>(M));
  for (int j = 1; j <= M; ++j) {
    comps.push_back(gen(j));
    check(comps.back(), "component " + std::to_string(j));
  }

  const long long half = 1LL << (M + 1);
  const double origin = -static_cast<double>(half);
  const auto ncells = static_cast<std::size_t>(std::llround(2.0 * static_cast<double>(half) / density_step));
  std::vector<Atom> atoms;
  std::vector<SingularPiece> pieces;
  std::vector<cplx> dens;

  auto place = [&](const Measure& m, long long n) {
    const double t = static_cast<double>(n);
    for (const auto& a : m.pp().atoms()) atoms.push_back({a.pos + t, a.weight});
    for (const auto& p : m.sc().pieces()) pieces.push_back(p.translated(t));
    const auto& ac = m.ac();
    if (ac.empty()) return;
    if (dens.empty()) dens.assign(ncells, cplx{});
    for (std::size_t k = 0; k < ac.size(); ++k) {
      const auto c = ac.cell(k);
      if (!(c.lo < c.hi) || ac.samples()[k] == cplx{}) continue;
      const double lo = c.lo + t;
      const double hi = c.hi + t;
      auto g = static_cast<long long>(std::floor((lo - origin) / density_step));
      g = std::max(0LL, g);
      for (; g < static_cast<long long>(ncells); ++g) {
        const double glo = origin + static_cast<double>(g) * density_step;
        const double ghi = glo + density_step;
        if (glo >= hi) break;
        const double overlap = std::min(ghi, hi) - std::max(glo, lo);
        if (overlap > 0.0) dens[static_cast<std::size_t>(g)] += ac.samples()[k] * (overlap / density_step);
      }
    }
  };

  place(base, 0);
  for (long long n = -half + 1; n < half; ++n) {
    if (n == 0) continue;
    const int j = v2(n);
    if (j >= 1 && j <= M) place(comps[static_cast<std::size_t>(j - 1)], n);
  }

  DyadicComposite out;
  out.level = M;
  DensityPart ac;
  if (!dens.empty()) ac = DensityPart(origin, density_step, std::move(dens));
  out.omega = Measure(PurePointPart(std::move(atoms)), std::move(ac), SingularPart(std::move(pieces)),
                      Window(origin, -origin));
  out.tail_defect.reserve(comps.size());
  for (const auto& c : comps) {
    double d = 0.0;
    for (const auto& g : defect_family) d = std::max(d, product_convergence_defect(c, base, g));
    out.tail_defect.push_back(d);
  }
  return out;
}

CertifiedLevel certify_level(const DyadicComposite& dc, double epsilon, double support_radius, double lipschitz) {
  if (!(epsilon > 0.0) || !(support_radius >= 0.0) || !(lipschitz >= 0.0)) {
    throw Error(ErrorCode::BadParams, "certification needs epsilon > 0 and non-negative R, L");
  }
  CertifiedLevel c;
  c.bound = epsilon / (4.0 * support_radius + 2.0);
  for (std::size_t j = dc.tail_defect.size(); j-- > 0;) {
    if (!(dc.tail_defect[j] < c.bound)) {
      c.realized_N = static_cast<int>(j + 1);
      break;
    }
  }
  // L / j < bound exactly when j > L / bound.
  const double limit = lipschitz / c.bound;
  if (!(static_cast<double>(dc.level + 1) > limit)) c.tail_N = static_cast<int>(std::floor(limit));
  c.N = std::max(c.realized_N, c.tail_N);
  return c;
}

// ---------------------------------------------------------------------------
// cut and project

double CutAndProjectScheme::covolume() const noexcept { return std::abs(b1[0] * b2[1] - b2[0] * b1[1]); }

double CutAndProjectScheme::star(long long m, long long n) const noexcept {
  return static_cast<double>(m) * b1[1] + static_cast<double>(n) * b2[1];
}

double CutAndProjectScheme::physical(long long m, long long n) const noexcept {
  return static_cast<double>(m) * b1[0] + static_cast<double>(n) * b2[0];
}

CutAndProjectScheme fibonacci_scheme() {
  CutAndProjectScheme s;
  s.b1[0] = 1.0;
  s.b1[1] = 1.0;
  s.b2[0] = kTau;
  s.b2[1] = 1.0 - kTau;
  s.internal_window = {-1.0, kTau - 1.0};
  return s;
}

WeightFunction fibonacci_tent() { return TestFunction::hat(-1.0, 0.0, kTau - 1.0); }

namespace {

struct Coeff {
  long long m, n;
};

// Lattice coefficients with x in [xlo, xhi] and x* in [ylo, yhi].
std::vector<Coeff> enumerate(const CutAndProjectScheme& s, double xlo, double xhi, double ylo, double yhi) {
  const double det = s.b1[0] * s.b2[1] - s.b2[0] * s.b1[1];
  if (!(std::abs(det) > 0.0)) throw Error(ErrorCode::BadParams, "lattice basis is degenerate");
  double nmin = INFINITY;
  double nmax = -INFINITY;
  for (double x : {xlo, xhi}) {
    for (double y : {ylo, yhi}) {
      const double n = (s.b1[0] * y - s.b1[1] * x) / det;
      nmin = std::min(nmin, n);
      nmax = std::max(nmax, n);
    }
  }
  std::vector<Coeff> out;
  const double eps = 1e-9;
  for (auto n = static_cast<long long>(std::floor(nmin)) - 1; n <= static_cast<long long>(std::ceil(nmax)) + 1;
       ++n) {
    double mlo = -INFINITY;
    double mhi = INFINITY;
    auto constrain = [&](double coef, double offset, double lo, double hi) {
      if (coef == 0.0) {
        if (offset < lo - eps || offset > hi + eps) mlo = INFINITY;
        return;
      }
      double a = (lo - offset) / coef;
      double b = (hi - offset) / coef;
      if (a > b) std::swap(a, b);
      mlo = std::max(mlo, a);
      mhi = std::min(mhi, b);
    };
    constrain(s.b1[0], static_cast<double>(n) * s.b2[0], xlo, xhi);
    constrain(s.b1[1], static_cast<double>(n) * s.b2[1], ylo, yhi);
    if (!(mlo <= mhi + 2.0)) continue;
    for (auto m = static_cast<long long>(std::floor(mlo)) - 1; m <= static_cast<long long>(std::ceil(mhi)) + 1; ++m) {
      const double x = s.physical(m, n);
      const double y = s.star(m, n);
      if (x >= xlo && x <= xhi && y >= ylo && y <= yhi) out.push_back({m, n});
    }
  }
  return out;
}

}  // namespace

long long required_range(const CutAndProjectScheme& s, const WeightFunction& h, const Window& window) {
  const auto sup = h.support();
  const double det = s.b1[0] * s.b2[1] - s.b2[0] * s.b1[1];
  double r = 0.0;
  for (double x : {window.lo(), window.hi()}) {
    for (double y : {sup.lo, sup.hi}) {
      const double m = (s.b2[1] * x - s.b2[0] * y) / det;
      const double n = (s.b1[0] * y - s.b1[1] * x) / det;
      r = std::max({r, std::abs(m), std::abs(n)});
    }
  }
  return static_cast<long long>(std::ceil(r)) + 1;
}

Measure cps_comb(const CutAndProjectScheme& s, const WeightFunction& h, const Window& window,
                 std::optional<long long> range) {
  if (h.is_zero()) return Measure::from_atoms({}, window);
  if (range && *range < required_range(s, h, window)) {
    throw Error(ErrorCode::GenerationRangeTooSmall, "lattice coefficient range does not cover the window");
  }
  const auto sup = h.support();
  const auto coeffs = enumerate(s, window.lo(), window.hi(), sup.lo, sup.hi);
  std::vector<Atom> atoms;
  atoms.reserve(coeffs.size());
  for (const auto& c : coeffs) {
    const double x = s.physical(c.m, c.n);
    if (!window.contains(x)) continue;
    const cplx w = h(s.star(c.m, c.n));
    if (w != cplx{}) atoms.push_back({x, w});
  }
  std::sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) { return a.pos < b.pos; });
  for (std::size_t i = 1; i < atoms.size(); ++i) {
    if (atoms[i].pos - atoms[i - 1].pos <= kMergeTolerance) {
      throw Error(ErrorCode::BadParams, "physical projection is not injective at working precision");
    }
  }
  return Measure::from_atoms(std::move(atoms), window);
}

std::vector<double> model_set_points(const CutAndProjectScheme& s, double lo, double hi) {
  std::vector<double> out;
  for (const auto& c : enumerate(s, lo, hi, s.internal_window.lo, s.internal_window.hi)) {
    out.push_back(s.physical(c.m, c.n));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> lattice_translates(const CutAndProjectScheme& s, double lo, double hi, double star_radius) {
  std::vector<double> out;
  for (const auto& c : enumerate(s, lo, hi, -star_radius, star_radius)) out.push_back(s.physical(c.m, c.n));
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// gallery

std::vector<std::string> gallery_names() {
  return {"ex1", "leb01", "triangle", "cantor", "scaledcantor", "dirac_comb", "ex3", "ex8"};
}

Measure gallery(const std::string& name, const GalleryParams& p) {
  if (name == "ex1") return ex1_measure(int_param(p, "n", 1, 1 << 20));
  if (name == "leb01") return leb01();
  if (name == "triangle") return triangle_measure(int_param(p, "n", 1, 1 << 16));
  if (name == "cantor") return cantor_measure(int_param(p, "depth", 0, 20, 8.0));
  if (name == "scaledcantor") {
    return scaled_cantor_measure(int_param(p, "n", 1, 1 << 20), int_param(p, "depth", 0, 20, 8.0));
  }
  if (name == "dirac_comb") {
    const double spacing = param(p, "spacing", 1.0);
    const double offset = param(p, "offset", 0.0);
    const double weight = param(p, "weight", 1.0);
    const double lo = param(p, "lo", -100.0);
    const double hi = param(p, "hi", 100.0);
    if (!(spacing > 0.0) || !std::isfinite(offset) || !std::isfinite(weight) || !(lo < hi)) {
      throw Error(ErrorCode::BadParams, "dirac_comb needs spacing > 0, finite offset and weight, lo < hi");
    }
    if ((hi - lo) / spacing > 1e7) throw Error(ErrorCode::BadParams, "dirac_comb would exceed 1e7 atoms");
    std::vector<Atom> atoms;
    const Window w(lo, hi);
    for (auto k = static_cast<long long>(std::floor((lo - offset) / spacing));
         offset + static_cast<double>(k) * spacing < hi; ++k) {
      const double x = offset + static_cast<double>(k) * spacing;
      if (w.contains(x)) atoms.push_back({x, weight});
    }
    return Measure::from_atoms(std::move(atoms), w);
  }
  if (name == "ex3" || name == "ex8") {
    const int M = int_param(p, "M", 1, 12, 10.0);
    const auto family = canonical_family(Window(-1.0, 1.0), 3);
    if (name == "ex3") return dyadic_composite(ex1_measure, leb01(), M, family).omega;
    return dyadic_composite(triangle_measure, Measure::from_atoms({{0.0, 1.0}}), M, family).omega;
  }
  throw Error(ErrorCode::UnknownGalleryName, "unknown gallery name '" + name + "'");
}

}  // namespace apmeas
