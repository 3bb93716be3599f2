#pragma once

#include <functional>

namespace spheresum {

// Runs fn(i) for i in [0, n) across up to `workers` threads with a static
// block partition. Items must write to disjoint state; results are then
// independent of the worker count. workers <= 1 runs inline. Exceptions from
// items are rethrown on the calling thread (first one wins).
void parallel_for_items(int n, int workers, const std::function<void(int)>& fn);

}  // namespace spheresum
