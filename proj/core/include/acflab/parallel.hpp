#pragma once

#include <cstddef>
#include <functional>

namespace acflab {

/// Worker count for internal scans: ACFLAB_THREADS if set and positive,
/// otherwise the hardware concurrency (at least 1).
std::size_t worker_count();

/// Calls body(i) for every i in [0, count). Iterations are distributed over
/// worker_count() threads in contiguous blocks; body must be safe to call
/// concurrently for distinct indices. The first exception thrown by any
/// iteration is rethrown on the calling thread after all workers join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace acflab
