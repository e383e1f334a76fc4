#include "apmeas/convolution.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "apmeas/error.hpp"
#include "apmeas/parallel.hpp"

namespace apmeas {

namespace {

constexpr double kEdgeSlack = 1e-9;

bool inside(const ClosedInterval& r, double x) {
  const double slack = kEdgeSlack * std::max(1.0, std::abs(x));
  return x >= r.lo - slack && x <= r.hi + slack;
}

}  // namespace

double SampledFunction::sup_norm() const noexcept {
  double m = 0.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double xi = x(i);
    if (xi >= validity.lo && xi <= validity.hi) m = std::max(m, std::abs(samples[i]));
  }
  return m;
}

ClosedInterval convolution_safe_range(const Measure& mu, const TestFunction& f) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const auto& T = mu.truncation();
  if (!T || f.is_zero()) return {-inf, inf};
  const auto s = f.support();
  return {T->lo() + s.hi, T->hi() + s.lo};
}

std::vector<cplx> convolve_at(const Measure& mu, const TestFunction& f, std::span<const double> xs) {
  const auto safe = convolution_safe_range(mu, f);
  for (double x : xs) {
    if (!inside(safe, x)) {
      throw Error(ErrorCode::EdgeContamination,
                  "convolution at " + std::to_string(x) + " depends on data outside the realized region");
    }
  }
  const TestFunction fr = f.reflected();
  std::vector<cplx> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t i) {
    out[i] = detail::pairing_unchecked(mu, fr.translated(xs[i]));
  });
  return out;
}

SampledFunction convolve_mf(const Measure& mu, const TestFunction& f, double origin, double step,
                            std::size_t count) {
  if (!(step > 0.0) || count == 0) throw Error(ErrorCode::InvalidArgument, "output grid needs step > 0 and points");
  SampledFunction out;
  out.origin = origin;
  out.step = step;
  std::vector<double> xs(count);
  for (std::size_t i = 0; i < count; ++i) xs[i] = out.x(i);
  out.samples = convolve_at(mu, f, xs);
  const auto safe = convolution_safe_range(mu, f);
  out.validity = {std::max(safe.lo, xs.front()), std::min(safe.hi, xs.back())};
  return out;
}

// ---------------------------------------------------------------------------
// measure * finite measure

namespace {

// Second antiderivative of a piecewise-constant density: G(x) = int_{-inf}^x F.
class DensityAntiderivatives {
 public:
  explicit DensityAntiderivatives(const DensityPart& d) {
    for (std::size_t k = 0; k < d.size(); ++k) {
      const auto c = d.cell(k);
      if (!(c.lo < c.hi)) continue;
      if (!xs_.empty() && xs_.back() < c.lo) {
        vals_.push_back(0.0);
        xs_.push_back(c.lo);
      }
      if (xs_.empty()) xs_.push_back(c.lo);
      vals_.push_back(d.samples()[k]);
      xs_.push_back(c.hi);
    }
    F_.assign(xs_.size(), cplx{});
    G_.assign(xs_.size(), cplx{});
    for (std::size_t i = 0; i + 1 < xs_.size(); ++i) {
      const double w = xs_[i + 1] - xs_[i];
      F_[i + 1] = F_[i] + vals_[i] * w;
      G_[i + 1] = G_[i] + F_[i] * w + vals_[i] * (0.5 * w * w);
    }
  }

  bool empty() const noexcept { return xs_.empty(); }
  double lo() const noexcept { return xs_.front(); }
  double hi() const noexcept { return xs_.back(); }

  cplx F(double x) const noexcept {
    if (xs_.empty() || x <= xs_.front()) return {};
    if (x >= xs_.back()) return F_.back();
    const std::size_t i = index(x);
    return F_[i] + vals_[i] * (x - xs_[i]);
  }

  cplx G(double x) const noexcept {
    if (xs_.empty() || x <= xs_.front()) return {};
    if (x >= xs_.back()) return G_.back() + F_.back() * (x - xs_.back());
    const std::size_t i = index(x);
    const double u = x - xs_[i];
    return G_[i] + F_[i] * u + vals_[i] * (0.5 * u * u);
  }

  const std::vector<double>& xs() const noexcept { return xs_; }
  const std::vector<cplx>& vals() const noexcept { return vals_; }

 private:
  std::size_t index(double x) const noexcept {
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    return static_cast<std::size_t>(it - xs_.begin()) - 1;
  }

  std::vector<double> xs_;
  std::vector<cplx> vals_;
  std::vector<cplx> F_;
  std::vector<cplx> G_;
};

// Antiderivative of a convolution that has an absolutely continuous result,
// accumulated from its ingredients.
struct AcAccumulator {
  struct AtomTerm {
    const std::vector<Atom>* atoms;
    const DensityAntiderivatives* dens;
  };
  struct DensTerm {
    const DensityAntiderivatives* a;
    const DensityAntiderivatives* b;
  };
  std::vector<AtomTerm> atom_terms;
  std::vector<DensTerm> dens_terms;

  // Integral of the result density over (-inf, x].
  cplx operator()(double x) const {
    cplx acc{};
    for (const auto& t : atom_terms) {
      for (const auto& a : *t.atoms) acc += a.weight * t.dens->F(x - a.pos);
    }
    for (const auto& t : dens_terms) {
      // int F_a(x - z) g(z) dz over the cells of b.
      const auto& xs = t.b->xs();
      const auto& vs = t.b->vals();
      for (std::size_t j = 0; j < vs.size(); ++j) {
        if (vs[j] == cplx{}) continue;
        acc += vs[j] * (t.a->G(x - xs[j]) - t.a->G(x - xs[j + 1]));
      }
    }
    return acc;
  }
};

ClosedInterval hull_of(const std::vector<Atom>& atoms) { return {atoms.front().pos, atoms.back().pos}; }

}  // namespace

MeasureConvolution convolve_mm(const Measure& mu, const Measure& nu) {
  if (!nu.is_finite()) {
    throw Error(ErrorCode::NonFiniteConvolver, "the second factor must be a finite measure");
  }
  MeasureConvolution out;
  out.convolver_mass = total_mass(nu);
  out.convolver_hull = nu.support_hull();

  std::optional<Window> trunc;
  if (const auto& T = mu.truncation()) {
    const double lo = T->lo() + out.convolver_hull.hi;
    const double hi = T->hi() + out.convolver_hull.lo;
    if (!(lo < hi)) throw Error(ErrorCode::TruncationTooSmall, "convolver support exceeds the realized region");
    trunc = Window(lo, hi);
  }

  const auto& mpp = mu.pp().atoms();
  const auto& npp = nu.pp().atoms();
  const auto& msc = mu.sc();
  const auto& nsc = nu.sc();

  // pure point
  std::vector<Atom> pp;
  pp.reserve(mpp.size() * npp.size());
  for (const auto& a : mpp) {
    for (const auto& b : npp) pp.push_back({a.pos + b.pos, a.weight * b.weight});
  }

  // singular continuous
  std::vector<SingularPiece> sc;
  for (const auto& a : mpp) {
    for (const auto& piece : nsc.pieces()) sc.push_back(piece.translated(a.pos).scaled(a.weight));
  }
  for (const auto& piece : msc.pieces()) {
    for (const auto& b : npp) sc.push_back(piece.translated(b.pos).scaled(b.weight));
  }
  if (!msc.empty() && !nsc.empty()) {
    std::vector<Atom> cloud;
    cloud.reserve(msc.realized_atoms().size() * nsc.realized_atoms().size());
    for (const auto& a : msc.realized_atoms()) {
      for (const auto& b : nsc.realized_atoms()) cloud.push_back({a.pos + b.pos, a.weight * b.weight});
    }
    sc.push_back(SingularPiece::from_cloud(std::move(cloud)));
  }

  // absolutely continuous
  DensityPart ac;
  const DensityAntiderivatives mac(mu.ac());
  const DensityAntiderivatives nac(nu.ac());
  if (!mac.empty() || !nac.empty()) {
    AcAccumulator acc;
    ClosedInterval span{0.0, 0.0};
    bool any = false;
    auto extend = [&](ClosedInterval a, ClosedInterval b) {
      const ClosedInterval s{a.lo + b.lo, a.hi + b.hi};
      span = any ? ClosedInterval{std::min(span.lo, s.lo), std::max(span.hi, s.hi)} : s;
      any = true;
    };
    if (!mac.empty()) {
      const ClosedInterval ms{mac.lo(), mac.hi()};
      if (!npp.empty()) {
        acc.atom_terms.push_back({&npp, &mac});
        extend(ms, hull_of(npp));
      }
      if (!nsc.empty()) {
        acc.atom_terms.push_back({&nsc.realized_atoms(), &mac});
        extend(ms, hull_of(nsc.realized_atoms()));
      }
      if (!nac.empty()) {
        acc.dens_terms.push_back({&mac, &nac});
        extend(ms, {nac.lo(), nac.hi()});
      }
    }
    if (!nac.empty()) {
      const ClosedInterval ns{nac.lo(), nac.hi()};
      if (!mpp.empty()) {
        acc.atom_terms.push_back({&mpp, &nac});
        extend(ns, hull_of(mpp));
      }
      if (!msc.empty()) {
        acc.atom_terms.push_back({&msc.realized_atoms(), &nac});
        extend(ns, hull_of(msc.realized_atoms()));
      }
    }
    if (any) {
      // Output grid: the finer of the two density grids, extended to cover the span.
      const DensityPart& ref = (!mu.ac().empty() && (nu.ac().empty() || mu.ac().step() <= nu.ac().step()))
                                   ? mu.ac()
                                   : nu.ac();
      const double step = ref.step();
      const double k0 = std::floor((span.lo - ref.origin()) / step);
      const double k1 = std::ceil((span.hi - ref.origin()) / step);
      const auto n = static_cast<std::size_t>(std::max(0.0, k1 - k0));
      const double origin = ref.origin() + k0 * step;
      std::vector<cplx> edges(n + 1);
      parallel_for(n + 1, [&](std::size_t i) { edges[i] = acc(origin + static_cast<double>(i) * step); });
      std::vector<cplx> samples(n);
      for (std::size_t i = 0; i < n; ++i) samples[i] = (edges[i + 1] - edges[i]) / step;
      ac = DensityPart(origin, step, std::move(samples));
    }
  }

  out.measure = Measure(PurePointPart(std::move(pp)), std::move(ac), SingularPart(std::move(sc)), trunc);
  return out;
}

// ---------------------------------------------------------------------------
// product topology defect

namespace {

void push_shifted(std::vector<double>& out, const std::vector<double>& base, const std::vector<double>& shifts,
                  const ClosedInterval& r) {
  for (double p : base) {
    for (double s : shifts) {
      const double x = p + s;
      if (x > r.lo && x < r.hi) out.push_back(x);
    }
  }
}

std::vector<double> positions_of(const Measure& mu) {
  std::vector<double> xs;
  for (const auto& a : mu.pp().atoms()) xs.push_back(a.pos);
  for (const auto& a : mu.sc().realized_atoms()) xs.push_back(a.pos);
  const auto b = mu.ac().boundaries();
  xs.insert(xs.end(), b.begin(), b.end());
  return xs;
}

}  // namespace

double product_convergence_defect(const Measure& mu_n, const Measure& mu, const TestFunction& g) {
  if (g.is_zero()) return 0.0;
  const auto r1 = convolution_safe_range(mu_n, g);
  const auto r2 = convolution_safe_range(mu, g);
  ClosedInterval r{std::max(r1.lo, r2.lo), std::min(r1.hi, r2.hi)};
  const auto s = g.support();
  // Outside the combined support plus supp(g) both convolutions vanish.
  if (mu_n.is_finite() || mu.is_finite()) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const Measure* m : {&mu_n, &mu}) {
      if (m->is_zero()) continue;
      if (!m->is_finite()) {
        lo = -std::numeric_limits<double>::infinity();
        hi = std::numeric_limits<double>::infinity();
        break;
      }
      const auto h = m->support_hull();
      lo = std::min(lo, h.lo + s.lo);
      hi = std::max(hi, h.hi + s.hi);
    }
    if (lo > hi) return 0.0;
    r = {std::max(r.lo, lo), std::min(r.hi, hi)};
  }
  if (!(r.lo <= r.hi) || !std::isfinite(r.lo) || !std::isfinite(r.hi)) {
    throw Error(ErrorCode::EdgeContamination, "no edge-safe region for the convolution difference");
  }

  std::vector<double> crit{r.lo, r.hi};
  const auto& shifts = g.breakpoints();
  push_shifted(crit, positions_of(mu_n), shifts, r);
  push_shifted(crit, positions_of(mu), shifts, r);
  std::sort(crit.begin(), crit.end());
  crit.erase(std::unique(crit.begin(), crit.end()), crit.end());

  // Between criticals each part of the difference is a polynomial of degree
  // <= 2; evaluate ends, midpoints and the vertices of the interpolating
  // parabolas.
  std::vector<double> xs;
  xs.reserve(2 * crit.size());
  for (std::size_t i = 0; i < crit.size(); ++i) {
    if (i > 0) xs.push_back(0.5 * (crit[i - 1] + crit[i]));
    xs.push_back(crit[i]);
  }
  auto diff = [&](const std::vector<double>& pts) {
    const auto a = convolve_at(mu_n, g, pts);
    const auto b = convolve_at(mu, g, pts);
    std::vector<cplx> d(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) d[i] = a[i] - b[i];
    return d;
  };
  const auto d = diff(xs);
  double best = 0.0;
  for (const auto& v : d) best = std::max(best, std::abs(v));

  std::vector<double> vertices;
  for (std::size_t i = 0; i + 2 < xs.size(); i += 2) {
    const double l = xs[i];
    const double r2v = xs[i + 2];
    const double h = 0.5 * (r2v - l);
    if (!(h > 0.0)) continue;
    for (int part = 0; part < 2; ++part) {
      auto comp = [part](cplx z) { return part == 0 ? z.real() : z.imag(); };
      const double y0 = comp(d[i]);
      const double y1 = comp(d[i + 1]);
      const double y2 = comp(d[i + 2]);
      const double curv = y0 - 2.0 * y1 + y2;
      if (curv == 0.0) continue;
      const double u = 0.5 * (y0 - y2) / curv;  // vertex offset from the midpoint in units of h
      if (u > -1.0 && u < 1.0) vertices.push_back(xs[i + 1] + u * h);
    }
  }
  if (!vertices.empty()) {
    for (const auto& v : diff(vertices)) best = std::max(best, std::abs(v));
  }
  return best;
}

// ---------------------------------------------------------------------------
// van Hove averaging

VanHoveSequence::VanHoveSequence(std::vector<double> radii) : radii_(std::move(radii)) {
  if (radii_.empty()) throw Error(ErrorCode::InvalidArgument, "van Hove sequence needs radii");
  for (std::size_t i = 0; i < radii_.size(); ++i) {
    if (!(radii_[i] > 0.0) || !std::isfinite(radii_[i]) || (i > 0 && !(radii_[i - 1] < radii_[i]))) {
      throw Error(ErrorCode::InvalidArgument, "van Hove radii must be positive and strictly increasing");
    }
  }
}

VanHoveSequence VanHoveSequence::integers(std::size_t count) {
  std::vector<double> r(count);
  for (std::size_t i = 0; i < count; ++i) r[i] = static_cast<double>(i + 1);
  return VanHoveSequence(std::move(r));
}

double VanHoveSequence::radius(std::size_t n) const {
  if (n < 1 || n > radii_.size()) throw Error(ErrorCode::InvalidArgument, "van Hove index out of range");
  return radii_[n - 1];
}

Window VanHoveSequence::set(std::size_t n) const {
  const double r = radius(n);
  return Window(-r, r);
}

double boundary_ratio(const VanHoveSequence& vh, const ClosedInterval& K, std::size_t n) {
  if (!(K.lo <= K.hi)) throw Error(ErrorCode::InvalidArgument, "compact set requires lo <= hi");
  const double r = vh.radius(n);
  // (cl(A + K) \ A) and (cl(A^c - K) intersected with cl A), A = (-r, r).
  std::vector<ClosedInterval> parts;
  auto add = [&](double lo, double hi) {
    if (lo < hi) parts.push_back({lo, hi});
  };
  const double s_lo = -r + K.lo;
  const double s_hi = r + K.hi;
  add(s_lo, std::min(-r, s_hi));
  add(std::max(r, s_lo), s_hi);
  add(-r, std::min(r, -r - K.lo));
  add(std::max(-r, r - K.hi), r);
  std::sort(parts.begin(), parts.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
  double total = 0.0;
  double cur_lo = 0.0;
  double cur_hi = 0.0;
  bool open = false;
  for (const auto& p : parts) {
    if (open && p.lo <= cur_hi) {
      cur_hi = std::max(cur_hi, p.hi);
      continue;
    }
    if (open) total += cur_hi - cur_lo;
    cur_lo = p.lo;
    cur_hi = p.hi;
    open = true;
  }
  if (open) total += cur_hi - cur_lo;
  return total / (2.0 * r);
}

Measure eberlein(const Measure& mu, const Measure& nu, const VanHoveSequence& vh, std::size_t n) {
  const Window A = vh.set(n);
  for (const Measure* m : {&mu, &nu}) {
    if (m->truncation() && !m->truncation()->contains(A)) {
      throw Error(ErrorCode::TruncationTooSmall, "averaging set leaves the realized region");
    }
  }
  const Measure a = restrict(mu, A).with_truncation(std::nullopt);
  const Measure b = restrict(nu, A).with_truncation(std::nullopt);
  return scale(convolve_mm(a, b).measure, 1.0 / A.length());
}

}  // namespace apmeas
