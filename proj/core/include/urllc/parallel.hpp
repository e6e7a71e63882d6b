#pragma once

#include <cstdint>
#include <functional>

namespace urllc {

// Samples per reduction chunk. Fixed so that chunk boundaries (and therefore
// summation order) do not depend on the worker count.
inline constexpr std::uint64_t kMcChunk = 16384;

// Worker cap: URLLC_LAB_THREADS if set, else hardware concurrency.
int worker_count();

// Runs fn(chunk_index, begin, end) for each chunk of [0, total). Chunks may be
// processed by any worker in any order; callers must write per-chunk results
// into chunk-indexed slots and reduce them in chunk order afterwards.
void parallel_chunks(std::uint64_t total, std::uint64_t chunk_size,
                     const std::function<void(std::uint64_t, std::uint64_t, std::uint64_t)>& fn);

}  // namespace urllc
