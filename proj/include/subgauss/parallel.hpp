#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <functional>
#include <thread>
#include <vector>

namespace subgauss {

// Worker count comes from SUBGAUSS_THREADS; unset or invalid means sequential.
// Read per call so tests can flip the variable at runtime.
inline int thread_budget() {
  const char* env = std::getenv("SUBGAUSS_THREADS");
  if (!env) return 1;
  int n = std::atoi(env);
  if (n < 1) return 1;
  unsigned hw = std::thread::hardware_concurrency();
  if (hw > 0 && n > static_cast<int>(hw)) n = static_cast<int>(hw);
  return n;
}

// Runs fn(i) for i in [0, n). Each index writes only its own slot, so results
// are identical no matter how many workers run.
inline void parallel_for_index(std::size_t n, const std::function<void(std::size_t)>& fn) {
  int workers = std::min<std::size_t>(thread_budget(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n) return;
        fn(i);
      }
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace subgauss
