#include "apmeas/measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "apmeas/error.hpp"

namespace apmeas {

// ---------------------------------------------------------------------------
// atoms

std::vector<Atom> normalize_atoms(std::vector<Atom> atoms) {
  for (const auto& a : atoms) {
    if (!std::isfinite(a.pos) || !std::isfinite(a.weight.real()) ||
        !std::isfinite(a.weight.imag())) {
      throw Error(ErrorCode::InvalidArgument, "non-finite atom");
    }
  }
  std::stable_sort(atoms.begin(), atoms.end(),
                   [](const Atom& a, const Atom& b) { return a.pos < b.pos; });
  std::vector<Atom> out;
  out.reserve(atoms.size());
  std::size_t i = 0;
  while (i < atoms.size()) {
    const double anchor = atoms[i].pos;
    cplx w = atoms[i].weight;
    double scale = std::abs(w);
    std::size_t j = i + 1;
    while (j < atoms.size() && atoms[j].pos - anchor <= kMergeTolerance) {
      w += atoms[j].weight;
      scale += std::abs(atoms[j].weight);
      ++j;
    }
    const bool cancelled = j > i + 1 && std::abs(w) <= 1e-14 * scale;
    if (w != cplx{} && !cancelled) out.push_back({anchor, w});
    i = j;
  }
  return out;
}

PurePointPart::PurePointPart(std::vector<Atom> atoms) : atoms_(normalize_atoms(std::move(atoms))) {
  // Closed windows [p_i, p_i + 2]: some maximizing window starts at an atom.
  double running = 0.0;
  std::size_t hi = 0;
  for (std::size_t lo = 0; lo < atoms_.size(); ++lo) {
    if (hi < lo) {
      hi = lo;
      running = 0.0;
    }
    while (hi < atoms_.size() && atoms_[hi].pos <= atoms_[lo].pos + 2.0) {
      running += std::abs(atoms_[hi].weight);
      ++hi;
    }
    tb_bound_ = std::max(tb_bound_, running);
    running -= std::abs(atoms_[lo].weight);
  }
}

// ---------------------------------------------------------------------------
// density

DensityPart::DensityPart(double origin, double step, std::vector<cplx> samples,
                         std::optional<ClosedInterval> clip)
    : origin_(origin), step_(step), samples_(std::move(samples)), clip_(clip) {
  if (!std::isfinite(origin) || !std::isfinite(step) || !(step > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "density requires finite origin and step > 0");
  }
  for (const auto& s : samples_) {
    if (!std::isfinite(s.real()) || !std::isfinite(s.imag())) {
      throw Error(ErrorCode::InvalidArgument, "non-finite density sample");
    }
  }
  if (clip_) {
    if (!(clip_->lo <= clip_->hi)) throw Error(ErrorCode::InvalidArgument, "clip requires lo <= hi");
    const double lo = std::max(origin_, clip_->lo);
    const double hi = std::min(origin_ + static_cast<double>(samples_.size()) * step_, clip_->hi);
    if (!(lo < hi)) samples_.clear();
    // A clip covering the whole grid carries no information.
    if (clip_->lo <= origin_ && clip_->hi >= origin_ + static_cast<double>(samples_.size()) * step_) {
      clip_.reset();
    }
  }
  if (std::all_of(samples_.begin(), samples_.end(), [](cplx v) { return v == cplx{}; })) {
    samples_.clear();
    clip_.reset();
  }
  if (samples_.empty()) {
    origin_ = 0.0;
    step_ = step;
  }
  build_prefix();
}

ClosedInterval DensityPart::cell(std::size_t k) const noexcept {
  double lo = origin_ + static_cast<double>(k) * step_;
  double hi = origin_ + static_cast<double>(k + 1) * step_;
  if (clip_) {
    lo = std::max(lo, clip_->lo);
    hi = std::min(hi, clip_->hi);
  }
  return {lo, hi};
}

ClosedInterval DensityPart::span() const noexcept {
  if (samples_.empty()) return {0.0, 0.0};
  return {cell(0).lo, cell(samples_.size() - 1).hi};
}

void DensityPart::build_prefix() {
  abs_prefix_.assign(samples_.size() + 1, 0.0);
  prefix_.assign(samples_.size() + 1, cplx{});
  for (std::size_t k = 0; k < samples_.size(); ++k) {
    const auto c = cell(k);
    const double len = c.hi > c.lo ? c.hi - c.lo : 0.0;
    abs_prefix_[k + 1] = abs_prefix_[k] + std::abs(samples_[k]) * len;
    prefix_[k + 1] = prefix_[k] + samples_[k] * len;
  }
}

namespace {

// Index of the cell containing x, assuming span.lo < x < span.hi.
std::size_t locate(double origin, double step, std::size_t n, double x) {
  double k = std::floor((x - origin) / step);
  if (k < 0.0) k = 0.0;
  auto idx = static_cast<std::size_t>(k);
  if (idx >= n) idx = n - 1;
  while (idx > 0 && origin + static_cast<double>(idx) * step > x) --idx;
  while (idx + 1 < n && origin + static_cast<double>(idx + 1) * step <= x) ++idx;
  return idx;
}

}  // namespace

cplx DensityPart::value_at(double x) const noexcept {
  if (samples_.empty()) return {};
  const auto s = span();
  if (!(x >= s.lo && x < s.hi)) return {};
  return samples_[locate(origin_, step_, samples_.size(), x)];
}

double DensityPart::antider_abs(double x) const noexcept {
  if (samples_.empty()) return 0.0;
  const auto s = span();
  if (x <= s.lo) return 0.0;
  if (x >= s.hi) return abs_prefix_.back();
  const std::size_t k = locate(origin_, step_, samples_.size(), x);
  const auto c = cell(k);
  const double part = x > c.lo ? x - c.lo : 0.0;
  return abs_prefix_[k] + std::abs(samples_[k]) * part;
}

double DensityPart::abs_integral(double u, double v) const noexcept {
  if (!(u < v)) return 0.0;
  const double r = antider_abs(v) - antider_abs(u);
  return r > 0.0 ? r : 0.0;
}

cplx DensityPart::integral(double u, double v) const noexcept {
  if (samples_.empty() || !(u < v)) return {};
  auto antider = [this](double x) -> cplx {
    const auto s = span();
    if (x <= s.lo) return {};
    if (x >= s.hi) return prefix_.back();
    const std::size_t k = locate(origin_, step_, samples_.size(), x);
    const auto c = cell(k);
    const double part = x > c.lo ? x - c.lo : 0.0;
    return prefix_[k] + samples_[k] * part;
  };
  return antider(v) - antider(u);
}

cplx DensityPart::integrate_against(const TestFunction& g) const noexcept {
  if (samples_.empty() || g.is_zero()) return {};
  const auto gs = g.support();
  const auto s = span();
  const double lo = std::max(gs.lo, s.lo);
  const double hi = std::min(gs.hi, s.hi);
  if (!(lo < hi)) return {};
  const std::size_t k0 = locate(origin_, step_, samples_.size(), lo);
  cplx acc{};
  for (std::size_t k = k0; k < samples_.size(); ++k) {
    const auto c = cell(k);
    if (c.lo >= hi) break;
    if (!(c.lo < c.hi) || samples_[k] == cplx{}) continue;
    acc += samples_[k] * g.integral(std::max(c.lo, lo), std::min(c.hi, hi));
  }
  return acc;
}

std::vector<double> DensityPart::boundaries() const {
  std::vector<double> out;
  if (samples_.empty()) return out;
  out.reserve(samples_.size() + 1);
  for (std::size_t k = 0; k < samples_.size(); ++k) {
    const auto c = cell(k);
    if (!(c.lo < c.hi)) continue;
    if (out.empty() || out.back() < c.lo) out.push_back(c.lo);
    out.push_back(c.hi);
  }
  return out;
}

DensityPart DensityPart::translated(double t) const {
  if (samples_.empty()) return *this;
  std::optional<ClosedInterval> clip;
  if (clip_) clip = ClosedInterval{clip_->lo + t, clip_->hi + t};
  return DensityPart(origin_ + t, step_, samples_, clip);
}

DensityPart DensityPart::reflected() const {
  if (samples_.empty()) return *this;
  std::vector<cplx> rev(samples_.rbegin(), samples_.rend());
  std::optional<ClosedInterval> clip;
  if (clip_) clip = ClosedInterval{-clip_->hi, -clip_->lo};
  return DensityPart(-(origin_ + static_cast<double>(samples_.size()) * step_), step_, std::move(rev),
                     clip);
}

DensityPart DensityPart::modulus() const {
  std::vector<cplx> out(samples_.size());
  std::transform(samples_.begin(), samples_.end(), out.begin(),
                 [](cplx v) { return cplx{std::abs(v), 0.0}; });
  return DensityPart(origin_, step_, std::move(out), clip_);
}

DensityPart DensityPart::conjugated() const {
  std::vector<cplx> out(samples_.size());
  std::transform(samples_.begin(), samples_.end(), out.begin(), [](cplx v) { return std::conj(v); });
  return DensityPart(origin_, step_, std::move(out), clip_);
}

DensityPart DensityPart::scaled(cplx c) const {
  std::vector<cplx> out(samples_.size());
  std::transform(samples_.begin(), samples_.end(), out.begin(), [c](cplx v) { return c * v; });
  return DensityPart(origin_, step_, std::move(out), clip_);
}

DensityPart DensityPart::restricted(const ClosedInterval& w) const {
  if (samples_.empty()) return *this;
  ClosedInterval clip = w;
  if (clip_) {
    clip.lo = std::max(clip.lo, clip_->lo);
    clip.hi = std::min(clip.hi, clip_->hi);
  }
  if (!(clip.lo < clip.hi)) return DensityPart{};
  return DensityPart(origin_, step_, samples_, clip);
}

// ---------------------------------------------------------------------------
// singular pieces

namespace {

ClosedInterval ifs_hull(const std::vector<IfsMap>& maps) {
  double lo = 0.0;
  double hi = 0.0;
  bool first = true;
  for (const auto& m : maps) {
    const double fp = m.offset / (1.0 - m.ratio);
    lo = first ? fp : std::min(lo, fp);
    hi = first ? fp : std::max(hi, fp);
    first = false;
  }
  for (int it = 0; it < 2000; ++it) {
    double nlo = lo;
    double nhi = hi;
    for (const auto& m : maps) {
      nlo = std::min(nlo, m.ratio * lo + m.offset);
      nhi = std::max(nhi, m.ratio * hi + m.offset);
    }
    if (nlo == lo && nhi == hi) break;
    lo = nlo;
    hi = nhi;
  }
  return {lo, hi};
}

}  // namespace

SingularPiece SingularPiece::from_ifs(std::vector<IfsMap> ifs, int depth, cplx mass) {
  if (ifs.empty()) throw Error(ErrorCode::InvalidArgument, "IFS needs at least one map");
  if (depth < 0) throw Error(ErrorCode::InvalidArgument, "IFS depth must be >= 0");
  double psum = 0.0;
  for (const auto& m : ifs) {
    if (!(m.ratio > 0.0 && m.ratio < 1.0)) {
      throw Error(ErrorCode::InvalidArgument, "IFS contraction ratio must lie in (0, 1)");
    }
    if (!(m.prob >= 0.0) || !std::isfinite(m.offset)) {
      throw Error(ErrorCode::InvalidArgument, "IFS probabilities must be >= 0, offsets finite");
    }
    psum += m.prob;
  }
  if (std::abs(psum - 1.0) > 1e-12) {
    throw Error(ErrorCode::InvalidArgument, "IFS probabilities must sum to 1");
  }
  const double count = std::pow(static_cast<double>(ifs.size()), depth);
  if (count > static_cast<double>(1 << 22)) {
    throw Error(ErrorCode::InvalidArgument, "IFS realization too large (maps^depth > 2^22)");
  }
  SingularPiece p;
  p.ifs = std::move(ifs);
  p.depth = depth;
  p.mass = mass;
  return p;
}

SingularPiece SingularPiece::from_cloud(std::vector<Atom> atoms) {
  SingularPiece p;
  p.cloud = normalize_atoms(std::move(atoms));
  for (const auto& a : p.cloud) p.mass += a.weight;
  return p;
}

std::vector<Atom> SingularPiece::realize() const {
  if (!is_ifs()) return cloud;
  if (mass == cplx{}) return {};
  const auto h = ifs_hull(ifs);
  std::vector<Atom> level{{0.5 * (h.lo + h.hi), mass}};
  for (int d = 0; d < depth; ++d) {
    std::vector<Atom> next;
    next.reserve(level.size() * ifs.size());
    for (const auto& m : ifs) {
      if (m.prob == 0.0) continue;
      for (const auto& a : level) next.push_back({m.ratio * a.pos + m.offset, a.weight * m.prob});
    }
    level = std::move(next);
  }
  return level;
}

ClosedInterval SingularPiece::hull() const {
  if (is_ifs()) return ifs_hull(ifs);
  if (cloud.empty()) return {0.0, 0.0};
  return {cloud.front().pos, cloud.back().pos};
}

SingularPiece SingularPiece::translated(double t) const {
  SingularPiece p = *this;
  for (auto& m : p.ifs) m.offset = m.offset + t * (1.0 - m.ratio);
  for (auto& a : p.cloud) a.pos += t;
  return p;
}

SingularPiece SingularPiece::reflected() const {
  SingularPiece p = *this;
  for (auto& m : p.ifs) m.offset = -m.offset;
  for (auto& a : p.cloud) a.pos = -a.pos;
  std::reverse(p.cloud.begin(), p.cloud.end());
  return p;
}

SingularPiece SingularPiece::dilated(double s) const {
  if (!(s > 0.0)) throw Error(ErrorCode::InvalidArgument, "dilation factor must be > 0");
  SingularPiece p = *this;
  for (auto& m : p.ifs) m.offset *= s;
  for (auto& a : p.cloud) a.pos *= s;
  return p;
}

SingularPiece SingularPiece::scaled(cplx c) const {
  SingularPiece p = *this;
  p.mass *= c;
  for (auto& a : p.cloud) a.weight *= c;
  return p;
}

SingularPart::SingularPart(std::vector<SingularPiece> pieces) : pieces_(std::move(pieces)) {
  std::vector<Atom> all;
  for (const auto& p : pieces_) {
    auto r = p.realize();
    all.insert(all.end(), r.begin(), r.end());
  }
  realized_ = normalize_atoms(std::move(all));
  if (realized_.empty()) pieces_.clear();
}

double SingularPart::total_mass() const noexcept {
  double m = 0.0;
  for (const auto& a : realized_) m += std::abs(a.weight);
  return m;
}

// ---------------------------------------------------------------------------
// measure

Measure::Measure(PurePointPart pp, DensityPart ac, SingularPart sc, std::optional<Window> truncation)
    : pp_(std::move(pp)), ac_(std::move(ac)), sc_(std::move(sc)), truncation_(truncation) {}

Measure Measure::from_atoms(std::vector<Atom> atoms, std::optional<Window> truncation) {
  return Measure(PurePointPart(std::move(atoms)), {}, {}, truncation);
}

Measure Measure::from_density(DensityPart f, std::optional<Window> truncation) {
  return Measure({}, std::move(f), {}, truncation);
}

Measure Measure::from_singular(SingularPart sc, std::optional<Window> truncation) {
  return Measure({}, {}, std::move(sc), truncation);
}

ClosedInterval Measure::support_hull() const {
  bool any = false;
  ClosedInterval h{0.0, 0.0};
  auto extend = [&](double lo, double hi) {
    h.lo = any ? std::min(h.lo, lo) : lo;
    h.hi = any ? std::max(h.hi, hi) : hi;
    any = true;
  };
  if (!pp_.empty()) extend(pp_.atoms().front().pos, pp_.atoms().back().pos);
  if (!ac_.empty()) extend(ac_.span().lo, ac_.span().hi);
  if (!sc_.empty()) extend(sc_.realized_atoms().front().pos, sc_.realized_atoms().back().pos);
  return h;
}

Measure Measure::with_truncation(std::optional<Window> w) const {
  Measure m = *this;
  m.truncation_ = w;
  return m;
}

namespace {

std::vector<Atom> map_atoms(const std::vector<Atom>& atoms, auto&& fn) {
  std::vector<Atom> out;
  out.reserve(atoms.size());
  for (const auto& a : atoms) out.push_back(fn(a));
  return out;
}

std::vector<SingularPiece> map_pieces(const std::vector<SingularPiece>& pieces, auto&& fn) {
  std::vector<SingularPiece> out;
  out.reserve(pieces.size());
  for (const auto& p : pieces) out.push_back(fn(p));
  return out;
}

}  // namespace

Measure translate(const Measure& mu, double t) {
  if (t == 0.0) return mu;
  auto pp = map_atoms(mu.pp().atoms(), [t](const Atom& a) { return Atom{a.pos + t, a.weight}; });
  auto sc = map_pieces(mu.sc().pieces(), [t](const SingularPiece& p) { return p.translated(t); });
  std::optional<Window> tr;
  if (mu.truncation()) tr = mu.truncation()->shifted(t);
  return Measure(PurePointPart(std::move(pp)), mu.ac().translated(t), SingularPart(std::move(sc)), tr);
}

Measure reflect(const Measure& mu) {
  auto pp = map_atoms(mu.pp().atoms(), [](const Atom& a) { return Atom{-a.pos, a.weight}; });
  auto sc = map_pieces(mu.sc().pieces(), [](const SingularPiece& p) { return p.reflected(); });
  std::optional<Window> tr;
  if (mu.truncation()) tr = mu.truncation()->reflected();
  return Measure(PurePointPart(std::move(pp)), mu.ac().reflected(), SingularPart(std::move(sc)), tr);
}

Measure conjugate(const Measure& mu) {
  auto pp = map_atoms(mu.pp().atoms(), [](const Atom& a) { return Atom{a.pos, std::conj(a.weight)}; });
  auto sc = map_pieces(mu.sc().pieces(), [](const SingularPiece& p) {
    SingularPiece q = p;
    q.mass = std::conj(q.mass);
    for (auto& a : q.cloud) a.weight = std::conj(a.weight);
    return q;
  });
  return Measure(PurePointPart(std::move(pp)), mu.ac().conjugated(), SingularPart(std::move(sc)),
                 mu.truncation());
}

Measure scale(const Measure& mu, cplx c) {
  auto pp = map_atoms(mu.pp().atoms(), [c](const Atom& a) { return Atom{a.pos, c * a.weight}; });
  auto sc = map_pieces(mu.sc().pieces(), [c](const SingularPiece& p) { return p.scaled(c); });
  return Measure(PurePointPart(std::move(pp)), mu.ac().scaled(c), SingularPart(std::move(sc)),
                 mu.truncation());
}

Measure total_variation(const Measure& mu) {
  auto pp = map_atoms(mu.pp().atoms(), [](const Atom& a) { return Atom{a.pos, std::abs(a.weight)}; });
  std::vector<SingularPiece> sc;
  const auto& pieces = mu.sc().pieces();
  if (pieces.size() == 1 && pieces.front().is_ifs()) {
    SingularPiece p = pieces.front();
    p.mass = std::abs(p.mass);
    sc.push_back(std::move(p));
  } else if (!mu.sc().empty()) {
    sc.push_back(SingularPiece::from_cloud(map_atoms(
        mu.sc().realized_atoms(), [](const Atom& a) { return Atom{a.pos, std::abs(a.weight)}; })));
  }
  return Measure(PurePointPart(std::move(pp)), mu.ac().modulus(), SingularPart(std::move(sc)),
                 mu.truncation());
}

namespace {

DensityPart add_densities(const DensityPart& a, const DensityPart& b) {
  if (a.empty()) return b;
  if (b.empty()) return a;
  const double s = a.step();
  if (std::abs(a.step() - b.step()) > 1e-12 * s) {
    throw Error(ErrorCode::InvalidArgument, "density grids differ in step");
  }
  const double shift = (b.origin() - a.origin()) / s;
  const double k = std::round(shift);
  if (std::abs(shift - k) > 1e-9) {
    throw Error(ErrorCode::InvalidArgument, "density grids differ in phase");
  }
  const bool same_clip = (!a.clip() && !b.clip()) ||
                         (a.clip() && b.clip() && a.clip()->lo == b.clip()->lo && a.clip()->hi == b.clip()->hi);
  if (!same_clip) throw Error(ErrorCode::InvalidArgument, "density clips differ");
  const auto off = static_cast<long long>(k);
  const long long lo = std::min(0LL, off);
  const long long hi = std::max(static_cast<long long>(a.size()), off + static_cast<long long>(b.size()));
  std::vector<cplx> out(static_cast<std::size_t>(hi - lo));
  for (std::size_t i = 0; i < a.size(); ++i) out[static_cast<std::size_t>(static_cast<long long>(i) - lo)] += a.samples()[i];
  for (std::size_t i = 0; i < b.size(); ++i) out[static_cast<std::size_t>(static_cast<long long>(i) + off - lo)] += b.samples()[i];
  const double origin = lo == 0 ? a.origin() : b.origin();
  return DensityPart(origin, s, std::move(out), a.clip());
}

}  // namespace

Measure add(const Measure& a, const Measure& b) {
  std::vector<Atom> pp = a.pp().atoms();
  pp.insert(pp.end(), b.pp().atoms().begin(), b.pp().atoms().end());
  std::vector<SingularPiece> sc = a.sc().pieces();
  sc.insert(sc.end(), b.sc().pieces().begin(), b.sc().pieces().end());
  std::optional<Window> tr = a.truncation();
  if (!tr) {
    tr = b.truncation();
  } else if (b.truncation()) {
    const double lo = std::max(tr->lo(), b.truncation()->lo());
    const double hi = std::min(tr->hi(), b.truncation()->hi());
    if (!(lo < hi)) throw Error(ErrorCode::TruncationTooSmall, "realized regions do not overlap");
    tr = Window(lo, hi);
  }
  return Measure(PurePointPart(std::move(pp)), add_densities(a.ac(), b.ac()),
                 SingularPart(std::move(sc)), tr);
}

Measure subtract(const Measure& a, const Measure& b) { return add(a, scale(b, -1.0)); }

namespace {

cplx atom_pairing(const std::vector<Atom>& atoms, const TestFunction& g) {
  const auto s = g.support();
  auto it = std::upper_bound(atoms.begin(), atoms.end(), s.lo,
                             [](double x, const Atom& a) { return x < a.pos; });
  cplx acc{};
  for (; it != atoms.end() && it->pos < s.hi; ++it) acc += it->weight * g(it->pos);
  return acc;
}

double atom_mass(const std::vector<Atom>& atoms, const Window& I) {
  auto it = std::upper_bound(atoms.begin(), atoms.end(), I.lo(),
                             [](double x, const Atom& a) { return x < a.pos; });
  double acc = 0.0;
  for (; it != atoms.end() && it->pos < I.hi(); ++it) acc += std::abs(it->weight);
  return acc;
}

}  // namespace

cplx pairing(const Measure& mu, const TestFunction& g) {
  if (g.is_zero()) return {};
  const auto s = g.support();
  if (mu.truncation() && !(mu.truncation()->lo() <= s.lo && s.hi <= mu.truncation()->hi())) {
    throw Error(ErrorCode::SupportOutsideTruncation, "test function support leaves the realized region");
  }
  return detail::pairing_unchecked(mu, g);
}

cplx detail::pairing_unchecked(const Measure& mu, const TestFunction& g) {
  if (g.is_zero()) return {};
  cplx acc = atom_pairing(mu.pp().atoms(), g);
  acc += mu.ac().integrate_against(g);
  acc += atom_pairing(mu.sc().realized_atoms(), g);
  return acc;
}

double mass(const Measure& mu, const Window& I) {
  if (mu.truncation() && !mu.truncation()->contains(I)) {
    throw Error(ErrorCode::WindowOutsideTruncation, "window leaves the realized region");
  }
  double acc = atom_mass(mu.pp().atoms(), I);
  acc += mu.ac().abs_integral(I.lo(), I.hi());
  acc += atom_mass(mu.sc().realized_atoms(), I);
  return acc;
}

Measure restrict(const Measure& mu, const Window& W) {
  std::vector<Atom> pp;
  for (const auto& a : mu.pp().atoms()) {
    if (W.contains(a.pos)) pp.push_back(a);
  }
  DensityPart ac = mu.ac().restricted({W.lo(), W.hi()});
  std::vector<SingularPiece> sc;
  const auto& realized = mu.sc().realized_atoms();
  const bool all_inside = std::all_of(realized.begin(), realized.end(),
                                      [&](const Atom& a) { return W.contains(a.pos); });
  if (all_inside) {
    sc = mu.sc().pieces();
  } else {
    std::vector<Atom> kept;
    for (const auto& a : realized) {
      if (W.contains(a.pos)) kept.push_back(a);
    }
    if (!kept.empty()) sc.push_back(SingularPiece::from_cloud(std::move(kept)));
  }
  std::optional<Window> tr = W;
  if (mu.truncation() && !mu.truncation()->contains(W)) {
    const double lo = std::max(W.lo(), mu.truncation()->lo());
    const double hi = std::min(W.hi(), mu.truncation()->hi());
    tr = lo < hi ? std::optional<Window>(Window(lo, hi)) : std::nullopt;
  }
  return Measure(PurePointPart(std::move(pp)), std::move(ac), SingularPart(std::move(sc)), tr);
}

std::tuple<Measure, Measure, Measure> components(const Measure& mu) {
  return {Measure(mu.pp(), {}, {}, mu.truncation()), Measure({}, mu.ac(), {}, mu.truncation()),
          Measure({}, {}, mu.sc(), mu.truncation())};
}

double total_mass(const Measure& mu) {
  double m = 0.0;
  for (const auto& a : mu.pp().atoms()) m += std::abs(a.weight);
  const auto s = mu.ac().span();
  m += mu.ac().abs_integral(s.lo, s.hi);
  m += mu.sc().total_mass();
  return m;
}

}  // namespace apmeas
