#pragma once

#include <cstddef>
#include <functional>

namespace logsum {

/// Upper bound on worker threads used by componentwise loops. Defaults to the
/// value of LOGSUM_PROX_THREADS if set, else the hardware concurrency.
std::size_t max_threads();
void set_max_threads(std::size_t n);

/// Calls body(begin, end) on disjoint chunks covering [0, n). Chunks are
/// fixed by n and the thread cap, so results written by index are identical
/// to the serial loop.
void parallel_for(std::size_t n, std::size_t min_chunk,
                  const std::function<void(std::size_t, std::size_t)> &body);

} // namespace logsum
