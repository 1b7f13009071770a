#pragma once

#include <cstddef>
#include <functional>

namespace pdjc {

// Worker count: PDJC_THREADS if set to a positive integer, otherwise
// std::thread::hardware_concurrency() (at least 1).
unsigned worker_count();

// Calls body(i) for i in [0, count) on up to worker_count() threads, in
// contiguous chunks. body must only write to slot i of its outputs.
// The first exception thrown by any worker is rethrown after all join.
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body);

}  // namespace pdjc
