#pragma once

#include <cstddef>
#include <functional>

namespace graphwave {

// Worker threads to use: GRAPHWAVE_THREADS when set to a positive integer,
// otherwise the hardware concurrency.
int worker_count();

// Chunked loop over [0, n); body receives half-open [begin, end) ranges.
// Callers must make per-index work independent so the chunking (and hence
// the thread count) never changes results.
void parallel_for(std::size_t n, const std::function<void(std::size_t, std::size_t)>& body);

}  // namespace graphwave
