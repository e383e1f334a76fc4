#pragma once

#include <vector>

#include "apmeas/measure.hpp"

namespace apmeas::detail {

/// Total-variation data of a measure, split by component. Densities live on
/// arbitrary sorted breakpoints so that differences of shifted grids fit.
struct SlidingProfile {
  std::vector<double> pp_pos, pp_mass;
  std::vector<double> sc_pos, sc_mass;
  std::vector<double> ac_xs;   // breakpoints
  std::vector<double> ac_abs;  // |f| on [ac_xs[i], ac_xs[i+1])

  bool empty() const noexcept { return pp_pos.empty() && sc_pos.empty() && ac_abs.empty(); }
};

SlidingProfile profile_of(const Measure& mu);

/// Profile of |mu - T_t mu|.
SlidingProfile difference_profile(const Measure& mu, double t);

struct SlidingResult {
  double value = 0.0;
  double argmax = 0.0;
};

/// sup over x in [lo, hi] of |mu|(x + U), exact. Summation order per
/// translate is (pp + ac) + sc, so component norms sandwich the total.
SlidingResult sliding_sup(const SlidingProfile& p, const Window& U, double lo, double hi);

/// Sorted critical translates of the profile for window U, clipped to
/// [lo, hi] and including both ends.
std::vector<double> sliding_criticals(const SlidingProfile& p, const Window& U, double lo, double hi);

/// The critical grid with midpoints between consecutive criticals.
std::vector<double> with_midpoints(const std::vector<double>& crit);

}  // namespace apmeas::detail
