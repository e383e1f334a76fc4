#pragma once

#include <cstddef>
#include <functional>

namespace apmeas {

/// Worker count: APMEAS_THREADS if set (>= 1), else hardware concurrency.
unsigned thread_count();

/// Calls fn(i) for i in [0, n). Each index runs exactly once; callers write
/// into preallocated slots so results do not depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace apmeas
