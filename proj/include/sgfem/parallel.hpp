#pragma once

#include <exception>
#include <functional>
#include <thread>
#include <vector>

namespace sgfem {

// Runs fn(0..n-1) on up to `workers` threads. Results must be written into
// index-addressed slots by the caller; exceptions are rethrown in index
// order, so the outcome never depends on scheduling.
inline void parallel_for_indexed(int n, int workers,
                                 const std::function<void(int)>& fn) {
  if (n <= 0) return;
  if (workers <= 1 || n == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  workers = std::min(workers, n);
  std::vector<std::exception_ptr> errors(n);
  std::vector<std::thread> pool;
  pool.reserve(workers);
  std::atomic<int> next{0};
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= n) break;
        try {
          fn(i);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  for (int i = 0; i < n; ++i)
    if (errors[i]) std::rethrow_exception(errors[i]);
}

}  // namespace sgfem
