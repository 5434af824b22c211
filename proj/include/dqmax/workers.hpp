#pragma once

#include <cstddef>
#include <functional>

namespace dqmax {

// Worker count: `requested` when non-zero, else the DQMAX_WORKERS
// environment variable, else the hardware concurrency. Never below 1.
unsigned resolve_workers(unsigned requested = 0);

// Runs job(0) .. job(count-1) on up to `workers` threads. Jobs are handed
// out in index order. The first exception thrown by any job is rethrown
// after all threads have stopped.
void parallel_for(std::size_t count, unsigned workers,
                  const std::function<void(std::size_t)>& job);

}  // namespace dqmax
