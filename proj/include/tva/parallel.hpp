#pragma once

#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace tva {

/// Runs fn(i) for i in [0, n) across hardware threads.  Used by the suite
/// checks, whose instances are independent; results must be merged by the
/// caller in index order to stay deterministic.
inline void parallel_for(size_t n, const std::function<void(size_t)>& fn) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw <= 1 || n <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  unsigned workers = std::min<size_t>(hw, n);
  std::vector<std::thread> threads;
  std::exception_ptr error;
  std::mutex error_mutex;
  std::atomic<size_t> next{0};
  for (unsigned w = 0; w < workers; ++w)
    threads.emplace_back([&]() {
      while (true) {
        size_t i = next.fetch_add(1);
        if (i >= n) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          return;
        }
      }
    });
  for (auto& t : threads) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace tva
