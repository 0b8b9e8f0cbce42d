#pragma once

#include <cstddef>
#include <functional>

namespace repeatkit {

/// Worker count: REPEATKIT_THREADS if set to a positive integer, otherwise
/// (unset or 0) the hardware concurrency.
std::size_t worker_count();

/// Calls body(begin, end) on disjoint contiguous chunks covering [0, count).
/// Chunks are fixed by count and worker_count(), never by timing.
void parallel_for(std::size_t count, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace repeatkit
