#pragma once

#include <cstddef>
#include <functional>

namespace sngraph {

// Upper bound on worker threads used inside a single model's pipeline.
// Defaults to hardware concurrency, capped by SNGRAPH_THREADS when set.
int max_threads();
void set_max_threads(int n);

// Worker count for a batch of `jobs` requested workers (0 = auto), honouring
// the SNGRAPH_THREADS cap.
int resolve_worker_count(int requested);

// Splits [0, count) into at most `threads` contiguous chunks and runs
// fn(chunk_index, begin, end) on each. Chunk boundaries depend only on
// count and the resolved thread count.
void parallel_chunks(std::size_t count, int threads,
                     const std::function<void(int, std::size_t, std::size_t)>& fn);

}  // namespace sngraph
