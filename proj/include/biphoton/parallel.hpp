#pragma once

#include <cstddef>
#include <functional>

namespace biphoton {

// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index must
// write to its own output slot; results are then independent of the worker
// count. threads <= 1 runs inline.
void parallel_for(std::size_t n, int threads, const std::function<void(std::size_t)>& fn);

int hardware_thread_count();

}  // namespace biphoton
