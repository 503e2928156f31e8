#pragma once

#include <cstddef>
#include <functional>

namespace syspredict {

/// Worker count from PREDICT_THREADS (0 or unset = hardware concurrency).
unsigned configured_threads();

/// Calls body(i) for every i in [0, count), split into contiguous chunks over
/// `threads` workers. Callers write results by index, so output order never
/// depends on scheduling. Exceptions from workers are rethrown (first one wins).
void parallel_for(std::size_t count, const std::function<void(std::size_t)>& body,
                  unsigned threads = configured_threads());

}  // namespace syspredict
