#pragma once

#include <cstddef>
#include <functional>

namespace san {

// Worker count: SAN_THREADS when set and positive, else hardware concurrency.
std::size_t thread_count();

// Runs body(i) for i in [0, n) over contiguous chunks. Each index must write
// only its own output slot; results are then independent of scheduling.
// The first exception thrown by any worker is rethrown on the caller.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace san
