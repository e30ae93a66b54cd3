#pragma once

#include <cstddef>
#include <functional>

namespace gg {

/// Worker count: hardware concurrency, capped by GG_THREADS when set.
unsigned worker_count();

/// Runs body(i) for i in [0, n). Indices are handed out dynamically; body
/// must only touch state owned by index i. The first exception thrown by any
/// worker is rethrown after all workers stop.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace gg
