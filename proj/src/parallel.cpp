#include "spheresum/parallel.hpp"

#include <algorithm>
#include <exception>
#include <thread>
#include <vector>

namespace spheresum {

void parallel_for_items(int n, int workers, const std::function<void(int)>& fn) {
  if (n <= 0) return;
  workers = std::clamp(workers, 1, n);
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  std::vector<std::exception_ptr> errors(workers);
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    const int begin = static_cast<int>(static_cast<long long>(n) * w / workers);
    const int end = static_cast<int>(static_cast<long long>(n) * (w + 1) / workers);
    pool.emplace_back([&, w, begin, end] {
      try {
        for (int i = begin; i < end; ++i) fn(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (std::thread& t : pool) t.join();
  for (const std::exception_ptr& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace spheresum
