#pragma once

#include <cstddef>
#include <functional>

namespace stegadv {

// Process-wide width of parallel maps. Results never depend on it: workers
// write disjoint slots and reductions run on the caller thread in index order.
void set_parallelism(int threads);
int parallelism();

// Runs fn(i) for i in [0, n) across a fixed block partition.
void parallel_for(size_t n, const std::function<void(size_t)>& fn);

}  // namespace stegadv
