#pragma once

#include <cstddef>
#include <functional>

namespace kdvlab {

/// Thread count to use: `requested` if positive, else the KDVLAB_THREADS
/// environment variable if set, else the hardware concurrency (at least 1).
int resolve_threads(int requested = 0);

/// Calls body(i) for every i in [0, count) on up to `threads` workers. Items
/// are handed out dynamically; callers write results into per-item slots so
/// the outcome does not depend on scheduling. The first exception thrown by
/// a body is rethrown after all workers stop.
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& body);

}  // namespace kdvlab
