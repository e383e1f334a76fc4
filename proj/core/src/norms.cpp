#include "apmeas/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "apmeas/convolution.hpp"
#include "apmeas/error.hpp"
#include "apmeas/parallel.hpp"
#include "sliding.hpp"

namespace apmeas {

std::string to_string(NormMethod m) {
  switch (m) {
    case NormMethod::Sliding: return "sliding";
    case NormMethod::SupFamily: return "sup-family";
    case NormMethod::Operator: return "operator";
    case NormMethod::CompactInf: return "compact-inf";
    case NormMethod::DyadicBall: return "dyadic-ball";
  }
  return "unknown";
}

ClosedInterval scan_range(const Measure& mu, const Window& U) {
  if (const auto& T = mu.truncation()) {
    const double lo = T->lo() - U.lo();
    const double hi = T->hi() - U.hi();
    if (!(lo <= hi)) {
      throw Error(ErrorCode::EmptyScanRange, "window longer than the realized region");
    }
    return {lo, hi};
  }
  if (mu.is_zero()) return {-1.0, 1.0};
  const auto h = mu.support_hull();
  return {h.lo - U.hi() - 1.0, h.hi - U.lo() + 1.0};
}

NormReport norm_U(const Measure& mu, const Window& U) {
  const auto range = scan_range(mu, U);
  const auto r = detail::sliding_sup(detail::profile_of(mu), U, range.lo, range.hi);
  return {r.value, r.argmax, NormMethod::Sliding, 0};
}

namespace {

std::vector<double> family_grid(const Measure& mu, const Window& U) {
  const auto range = scan_range(mu, U);
  return detail::with_midpoints(detail::sliding_criticals(detail::profile_of(mu), U, range.lo, range.hi));
}

// |mu(T_t g)| for every (t, g), row-major in t.
std::vector<double> family_table(const Measure& mu, std::span<const TestFunction> family,
                                 const std::vector<double>& grid) {
  std::vector<double> table(grid.size() * family.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    for (std::size_t k = 0; k < family.size(); ++k) {
      table[i * family.size() + k] =
          std::abs(detail::pairing_unchecked(mu, family[k].translated(grid[i])));
    }
  });
  return table;
}

void check_fu(const Window& U, std::span<const TestFunction> family) {
  for (const auto& g : family) {
    if (!g.in_unit_family(U)) {
      throw Error(ErrorCode::FamilyNotInFU, "family member is not in the unit family of the window");
    }
  }
}

}  // namespace

std::array<double, 3> family_sup_orderings(const Measure& mu, const Window& U,
                                           std::span<const TestFunction> family) {
  check_fu(U, family);
  const auto grid = family_grid(mu, U);
  const auto table = family_table(mu, family, grid);
  const std::size_t nf = family.size();

  double t_then_g = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    double row = 0.0;
    for (std::size_t k = 0; k < nf; ++k) row = std::max(row, table[i * nf + k]);
    t_then_g = std::max(t_then_g, row);
  }
  double joint = 0.0;
  for (double v : table) joint = std::max(joint, v);
  double g_then_t = 0.0;
  for (std::size_t k = 0; k < nf; ++k) {
    double col = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) col = std::max(col, table[i * nf + k]);
    g_then_t = std::max(g_then_t, col);
  }
  return {t_then_g, joint, g_then_t};
}

NormReport norm_via_family(const Measure& mu, const Window& U, std::span<const TestFunction> family) {
  check_fu(U, family);
  const auto grid = family_grid(mu, U);
  const auto table = family_table(mu, family, grid);
  NormReport rep{0.0, grid.empty() ? 0.0 : grid.front(), NormMethod::SupFamily, family.size()};
  const std::size_t nf = family.size();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t k = 0; k < nf; ++k) {
      if (table[i * nf + k] > rep.value) {
        rep.value = table[i * nf + k];
        rep.argmax_translate = grid[i];
      }
    }
  }
  return rep;
}

NormReport norm_via_dyadic_ball(const Measure& mu, const Window& U, int depth) {
  if (depth < 1 || depth > 16) throw Error(ErrorCode::InvalidArgument, "ball depth must be in [1, 16]");
  const auto range = scan_range(mu, U);
  const auto prof = detail::profile_of(mu);
  const int cells = 1 << depth;
  const double a = U.lo();
  const double L = U.length();
  const double h = L / cells;

  auto crit = detail::sliding_criticals(prof, U, range.lo, range.hi);
  auto add_node_shifts = [&](const std::vector<double>& xs) {
    for (double p : xs) {
      for (int k = 0; k <= cells; ++k) {
        const double t = p - (a + k * h);
        if (t > range.lo && t < range.hi) crit.push_back(t);
      }
    }
  };
  add_node_shifts(prof.pp_pos);
  add_node_shifts(prof.sc_pos);
  add_node_shifts(prof.ac_xs);
  std::sort(crit.begin(), crit.end());
  crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
  const auto grid = detail::with_midpoints(crit);

  const auto& pp = mu.pp().atoms();
  const auto& sc = mu.sc().realized_atoms();
  const auto& ac = mu.ac();

  std::vector<double> values(grid.size());
  parallel_for(grid.size(), [&](std::size_t gi) {
    const double t = grid[gi];
    const double base = t + a;
    std::vector<cplx> coef(static_cast<std::size_t>(cells) + 1);
    auto add_atoms = [&](const std::vector<Atom>& atoms) {
      auto it = std::upper_bound(atoms.begin(), atoms.end(), base,
                                 [](double x, const Atom& at) { return x < at.pos; });
      for (; it != atoms.end(); ++it) {
        const double u = it->pos - base;
        if (!(u < L)) break;
        const double s = u / h;
        int m = static_cast<int>(std::floor(s));
        m = std::clamp(m, 0, cells - 1);
        const double frac = s - m;
        coef[static_cast<std::size_t>(m)] += it->weight * (1.0 - frac);
        coef[static_cast<std::size_t>(m) + 1] += it->weight * frac;
      }
    };
    add_atoms(pp);
    for (std::size_t k = 0; k < ac.size(); ++k) {
      const auto c = ac.cell(k);
      const double u0 = std::max(c.lo - base, 0.0);
      const double u1 = std::min(c.hi - base, L);
      if (!(u0 < u1)) continue;
      const cplx f = ac.samples()[k];
      int m0 = std::clamp(static_cast<int>(std::floor(u0 / h)), 0, cells - 1);
      for (int m = m0; m < cells; ++m) {
        const double lo = std::max(u0, m * h);
        const double hi = std::min(u1, (m + 1) * h);
        if (lo >= u1) break;
        if (!(lo < hi)) continue;
        const double al = lo - m * h;
        const double be = hi - m * h;
        const double rising = (be * be - al * al) / (2.0 * h);
        coef[static_cast<std::size_t>(m)] += f * ((hi - lo) - rising);
        coef[static_cast<std::size_t>(m) + 1] += f * rising;
      }
    }
    add_atoms(sc);
    double s = 0.0;
    for (int j = 1; j < cells; ++j) s += std::abs(coef[static_cast<std::size_t>(j)]);
    values[gi] = s;
  });

  NormReport rep{0.0, grid.empty() ? 0.0 : grid.front(), NormMethod::DyadicBall,
                 static_cast<std::size_t>(cells - 1)};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (values[i] > rep.value) {
      rep.value = values[i];
      rep.argmax_translate = grid[i];
    }
  }
  return rep;
}

NormReport operator_norm(const Measure& mu, const Window& U, std::span<const TestFunction> family) {
  const Window minus_u = U.reflected();
  for (const auto& f : family) {
    if (f.is_zero()) throw Error(ErrorCode::ZeroFunctionInFamily, "zero function in family");
    const auto s = f.support();
    if (s.lo < minus_u.lo() || s.hi > minus_u.hi()) {
      throw Error(ErrorCode::FamilyNotInMinusU, "family member is not supported in -U");
    }
  }
  const auto grid = family_grid(mu, U);
  NormReport rep{0.0, grid.empty() ? 0.0 : grid.front(), NormMethod::Operator, family.size()};
  for (const auto& f : family) {
    const auto conv = convolve_at(mu, f, grid);
    const double sup = f.sup_norm();
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double v = std::abs(conv[i]) / sup;
      if (v > rep.value) {
        rep.value = v;
        rep.argmax_translate = grid[i];
      }
    }
  }
  return rep;
}

NormReport norm_K_compact(const Measure& mu, const ClosedInterval& K,
                          std::span<const TestFunction> upper_family) {
  if (!(K.lo <= K.hi) || !std::isfinite(K.lo) || !std::isfinite(K.hi)) {
    throw Error(ErrorCode::InvalidArgument, "compact set requires finite lo <= hi");
  }
  if (upper_family.empty()) throw Error(ErrorCode::FamilyNotDominating, "empty dominating family");
  double smin = 0.0;
  double smax = 0.0;
  bool first = true;
  for (const auto& f : upper_family) {
    for (const auto& v : f.values()) {
      if (v.imag() != 0.0) throw Error(ErrorCode::FamilyNotDominating, "dominating functions must be real");
    }
    std::vector<double> probes{K.lo, K.hi};
    for (double x : f.breakpoints()) {
      if (x > K.lo && x < K.hi) probes.push_back(x);
    }
    for (double x : probes) {
      if (!(f(x).real() >= 1.0)) {
        throw Error(ErrorCode::FamilyNotDominating, "family member falls below 1 on K");
      }
    }
    const auto s = f.support();
    smin = first ? s.lo : std::min(smin, s.lo);
    smax = first ? s.hi : std::max(smax, s.hi);
    first = false;
  }

  const Measure tv = total_variation(mu);
  double lo;
  double hi;
  if (const auto& T = tv.truncation()) {
    lo = T->lo() - smin;
    hi = T->hi() - smax;
    if (!(lo <= hi)) throw Error(ErrorCode::EmptyScanRange, "family support longer than the realized region");
  } else if (tv.is_zero()) {
    lo = -1.0;
    hi = 1.0;
  } else {
    const auto hull = tv.support_hull();
    lo = hull.lo - smax - 1.0;
    hi = hull.hi - smin + 1.0;
  }

  const auto prof = detail::profile_of(tv);
  std::vector<double> shifts{K.lo, K.hi};
  for (const auto& f : upper_family) shifts.insert(shifts.end(), f.breakpoints().begin(), f.breakpoints().end());
  std::vector<double> crit{lo, hi};
  auto add = [&](const std::vector<double>& xs) {
    for (double p : xs) {
      for (double s : shifts) {
        const double t = p - s;
        if (t > lo && t < hi) crit.push_back(t);
      }
    }
  };
  add(prof.pp_pos);
  add(prof.sc_pos);
  add(prof.ac_xs);
  std::sort(crit.begin(), crit.end());
  crit.erase(std::unique(crit.begin(), crit.end()), crit.end());
  const auto grid = detail::with_midpoints(crit);

  std::vector<double> values(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) {
    double m = 0.0;
    for (std::size_t k = 0; k < upper_family.size(); ++k) {
      const double v = detail::pairing_unchecked(tv, upper_family[k].translated(grid[i])).real();
      m = k == 0 ? v : std::min(m, v);
    }
    values[i] = m;
  });
  NormReport rep{0.0, grid.front(), NormMethod::CompactInf, upper_family.size()};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (values[i] > rep.value) {
      rep.value = values[i];
      rep.argmax_translate = grid[i];
    }
  }
  return rep;
}

int window_equivalence_constant(const Window& A, const Window& B) {
  // Open translates of an interval of length la cover one of length lb iff
  // k * la > lb.
  auto cover = [](double la, double lb) {
    if (la >= lb) return 1;
    return static_cast<int>(std::floor(lb / la)) + 1;
  };
  return std::max(cover(A.length(), B.length()), cover(B.length(), A.length()));
}

double stepanov_norm(const DensityPart& f, const Window& U, std::optional<Window> truncation) {
  return norm_U(Measure::from_density(f, truncation), U).value / U.length();
}

}  // namespace apmeas
