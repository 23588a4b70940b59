#pragma once

#include <cstddef>
#include <functional>

namespace exemb {

/// Worker count used when an options struct leaves threads at 0.
/// Defaults to std::thread::hardware_concurrency().
int default_threads();
void set_default_threads(int threads);

/// Splits [0, count) into at most `threads` contiguous chunks and calls
/// fn(worker, begin, end) for each, one chunk per std::thread. The split
/// depends only on (count, threads), so per-worker partial results reduced
/// in worker order are reproducible at a fixed worker count.
void parallel_chunks(std::size_t count, int threads,
                     const std::function<void(int, std::size_t, std::size_t)>& fn);

}  // namespace exemb
