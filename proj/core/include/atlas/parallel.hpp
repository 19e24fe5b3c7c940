#pragma once

#include <cstddef>
#include <functional>

namespace atlas {

// Worker count: BOUNDARY_ATLAS_THREADS if set to a positive integer, else the
// hardware concurrency (at least 1).
std::size_t worker_count();

// Runs fn(i) for i in [0, n) on contiguous index blocks. Each index must write
// only its own output slot; the first exception by index is rethrown.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& fn);

}  // namespace atlas
