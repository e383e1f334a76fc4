#pragma once

#include <cstdint>
#include <vector>

#include "apmeas/measure.hpp"

namespace apmeas {

/// Deterministic random finite measures supported in (-8, 8). Measure i is
/// pp-only, ac-only, sc-only or mixed according to i % 4. Atoms sit on the
/// 1/32 grid with complex weights in the unit disk; densities are real
/// piecewise constant on a 1/2 grid with values in [-1, 1]; the sc part is a
/// Cantor measure of random mass in [0, 1] on a subinterval of length <= 0.9.
std::vector<Measure> corpus(std::uint64_t seed, std::size_t size);

}  // namespace apmeas
