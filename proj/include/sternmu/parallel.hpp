#pragma once

#include <cstddef>
#include <functional>

namespace sternmu {

// Thread count resolution: explicit request > STERNMU_THREADS env > hardware.
int resolve_threads(int requested);

// Runs fn(begin, end) over [0, count) split into fixed-size chunks handed out
// by an atomic counter.  Chunk boundaries do not depend on the worker count,
// so writers that own disjoint output slots stay deterministic.
void parallel_chunks(std::size_t count, std::size_t chunk_size, int threads,
                     const std::function<void(std::size_t, std::size_t)>& fn);

}  // namespace sternmu
