#include "sliding.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace apmeas::detail {

namespace {

void push_atoms(const std::vector<Atom>& atoms, std::vector<double>& pos, std::vector<double>& m) {
  pos.reserve(atoms.size());
  m.reserve(atoms.size());
  for (const auto& a : atoms) {
    pos.push_back(a.pos);
    m.push_back(std::abs(a.weight));
  }
}

// Atoms strictly inside (x + a, x + b). An atom within a few ulps of an edge
// counts as on it, so two atoms whose gap is |U| up to rounding never share
// a window.
double atom_sum(const std::vector<double>& pos, const std::vector<double>& mass, const std::vector<double>& prefix,
                double a, double b, double x) {
  if (pos.empty()) return 0.0;
  const double tol = 8.0 * std::numeric_limits<double>::epsilon() * (std::abs(x) + std::abs(a) + std::abs(b));
  const double xr = x + tol;
  const double xl = x - tol;
  auto first = std::upper_bound(pos.begin(), pos.end(), xr,
                                [a](double xv, double p) { return xv < p - a; });
  auto last = std::lower_bound(pos.begin(), pos.end(), xl,
                               [b](double p, double xv) { return p - b < xv; });
  if (last <= first) return 0.0;
  const auto i0 = static_cast<std::size_t>(first - pos.begin());
  const auto i1 = static_cast<std::size_t>(last - pos.begin());
  // Short runs are summed directly: a prefix difference is off by rounding
  // even for a single atom, which would let test-function pairings exceed it.
  if (i1 - i0 <= 64) {
    double s = 0.0;
    for (std::size_t i = i0; i < i1; ++i) s += mass[i];
    return s;
  }
  return prefix[i1] - prefix[i0];
}

std::vector<double> prefix_of(const std::vector<double>& m) {
  std::vector<double> out(m.size() + 1, 0.0);
  for (std::size_t i = 0; i < m.size(); ++i) out[i + 1] = out[i] + m[i];
  return out;
}

void add_criticals(std::vector<double>& out, const std::vector<double>& xs, double a, double b,
                   double lo, double hi) {
  for (double p : xs) {
    const double c1 = p - b;
    const double c2 = p - a;
    if (c1 > lo && c1 < hi) out.push_back(c1);
    if (c2 > lo && c2 < hi) out.push_back(c2);
  }
}

void sort_unique(std::vector<double>& v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

// x -> integral of |f| over (x + a, x + b), known exactly at the density's own
// criticals and interpolated (clamped) in between.
class DensitySlide {
 public:
  DensitySlide(const SlidingProfile& p, double a, double b, double lo, double hi) {
    if (p.ac_abs.empty()) return;
    const auto& xs = p.ac_xs;
    cum_.assign(xs.size(), 0.0);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i) cum_[i + 1] = cum_[i] + p.ac_abs[i] * (xs[i + 1] - xs[i]);
    crit_ = {lo, hi};
    add_criticals(crit_, xs, a, b, lo, hi);
    sort_unique(crit_);
    vals_.reserve(crit_.size());
    for (double x : crit_) {
      const double v = antider(p, x + b) - antider(p, x + a);
      vals_.push_back(v > 0.0 ? v : 0.0);
    }
  }

  bool empty() const noexcept { return crit_.empty(); }

  double operator()(double x) const noexcept {
    if (crit_.empty()) return 0.0;
    auto it = std::lower_bound(crit_.begin(), crit_.end(), x);
    if (it == crit_.end()) return vals_.back();
    const auto j = static_cast<std::size_t>(it - crit_.begin());
    if (*it == x || j == 0) return vals_[j];
    const double l = crit_[j - 1];
    const double r = crit_[j];
    const double vl = vals_[j - 1];
    const double vr = vals_[j];
    const double v = vl + (vr - vl) * ((x - l) / (r - l));
    return std::clamp(v, std::min(vl, vr), std::max(vl, vr));
  }

 private:
  double antider(const SlidingProfile& p, double y) const noexcept {
    const auto& xs = p.ac_xs;
    if (y <= xs.front()) return 0.0;
    if (y >= xs.back()) return cum_.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), y);
    const auto i = static_cast<std::size_t>(it - xs.begin()) - 1;
    return cum_[i] + p.ac_abs[i] * (y - xs[i]);
  }

  std::vector<double> cum_;
  std::vector<double> crit_;
  std::vector<double> vals_;
};

}  // namespace

SlidingProfile profile_of(const Measure& mu) {
  SlidingProfile p;
  push_atoms(mu.pp().atoms(), p.pp_pos, p.pp_mass);
  push_atoms(mu.sc().realized_atoms(), p.sc_pos, p.sc_mass);
  const auto& ac = mu.ac();
  for (std::size_t k = 0; k < ac.size(); ++k) {
    const auto c = ac.cell(k);
    if (!(c.lo < c.hi)) continue;
    if (p.ac_xs.empty()) {
      p.ac_xs.push_back(c.lo);
    } else if (p.ac_xs.back() < c.lo) {
      p.ac_abs.push_back(0.0);
      p.ac_xs.push_back(c.lo);
    }
    p.ac_abs.push_back(std::abs(ac.samples()[k]));
    p.ac_xs.push_back(c.hi);
  }
  return p;
}

SlidingProfile difference_profile(const Measure& mu, double t) {
  SlidingProfile p;
  auto diff_atoms = [t](const std::vector<Atom>& atoms) {
    std::vector<Atom> all = atoms;
    all.reserve(2 * atoms.size());
    for (const auto& a : atoms) all.push_back({a.pos + t, -a.weight});
    return normalize_atoms(std::move(all));
  };
  push_atoms(diff_atoms(mu.pp().atoms()), p.pp_pos, p.pp_mass);
  push_atoms(diff_atoms(mu.sc().realized_atoms()), p.sc_pos, p.sc_mass);

  const auto& ac = mu.ac();
  if (!ac.empty()) {
    const auto base = ac.boundaries();
    std::vector<double> xs;
    xs.reserve(2 * base.size());
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < base.size() || j < base.size()) {
      const double u = i < base.size() ? base[i] : INFINITY;
      const double v = j < base.size() ? base[j] + t : INFINITY;
      if (u <= v) {
        if (xs.empty() || xs.back() < u) xs.push_back(u);
        ++i;
      } else {
        if (xs.empty() || xs.back() < v) xs.push_back(v);
        ++j;
      }
    }
    p.ac_xs = std::move(xs);
    p.ac_abs.reserve(p.ac_xs.size());
    for (std::size_t k = 0; k + 1 < p.ac_xs.size(); ++k) {
      const double m = 0.5 * (p.ac_xs[k] + p.ac_xs[k + 1]);
      p.ac_abs.push_back(std::abs(ac.value_at(m) - ac.value_at(m - t)));
    }
    if (p.ac_xs.size() < 2) {
      p.ac_xs.clear();
      p.ac_abs.clear();
    }
  }
  return p;
}

std::vector<double> sliding_criticals(const SlidingProfile& p, const Window& U, double lo, double hi) {
  const double a = U.lo();
  const double b = U.hi();
  std::vector<double> crit{lo, hi};
  add_criticals(crit, p.pp_pos, a, b, lo, hi);
  add_criticals(crit, p.sc_pos, a, b, lo, hi);
  if (!p.ac_abs.empty()) add_criticals(crit, p.ac_xs, a, b, lo, hi);
  sort_unique(crit);
  return crit;
}

std::vector<double> with_midpoints(const std::vector<double>& crit) {
  std::vector<double> out;
  out.reserve(2 * crit.size());
  for (std::size_t i = 0; i < crit.size(); ++i) {
    if (i > 0) {
      const double m = 0.5 * (crit[i - 1] + crit[i]);
      if (m > crit[i - 1] && m < crit[i]) out.push_back(m);
    }
    out.push_back(crit[i]);
  }
  return out;
}

SlidingResult sliding_sup(const SlidingProfile& p, const Window& U, double lo, double hi) {
  const double a = U.lo();
  const double b = U.hi();
  const auto pp_prefix = prefix_of(p.pp_mass);
  const auto sc_prefix = prefix_of(p.sc_mass);
  const DensitySlide dens(p, a, b, lo, hi);

  auto at = [&](double x_atoms, double dens_value) {
    return (atom_sum(p.pp_pos, p.pp_mass, pp_prefix, a, b, x_atoms) + dens_value) +
           atom_sum(p.sc_pos, p.sc_mass, sc_prefix, a, b, x_atoms);
  };

  SlidingResult best{0.0, lo};
  if (!(lo < hi)) {
    best.value = at(lo, dens(lo));
    return best;
  }
  const auto crit = sliding_criticals(p, U, lo, hi);
  bool first = true;
  for (std::size_t i = 0; i + 1 < crit.size(); ++i) {
    const double l = crit[i];
    const double r = crit[i + 1];
    const double m = 0.5 * (l + r);
    const double dl = dens(l);
    const double dr = dens(r);
    const double v = at(m, std::max(dl, dr));
    if (first || v > best.value) {
      best.value = v;
      best.argmax = dl > dr ? l : (dr > dl ? r : m);
      first = false;
    }
  }
  return best;
}

}  // namespace apmeas::detail
