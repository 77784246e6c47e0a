#pragma once

#include <cstddef>
#include <functional>

namespace fissura {

/// Number of worker threads: FISSURA_THREADS when set (>= 1), otherwise the
/// hardware concurrency.
unsigned thread_count();

/// Runs body(i) for i in [0, n) over contiguous chunks. Each index is visited
/// exactly once; callers write results by index, so the outcome does not
/// depend on scheduling.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace fissura
