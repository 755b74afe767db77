#pragma once

#include <cstddef>
#include <functional>

namespace zadic {

// ZADIC_THREADS if set, otherwise the hardware concurrency; at least 1.
unsigned thread_count();

// Runs body(i) for every i in [0, n). Each call may only write state owned by
// index i. The first exception thrown by any call is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace zadic
