#pragma once

#include <algorithm>
#include <atomic>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace sindex {

inline int resolve_threads(int requested) {
  const unsigned hw = std::thread::hardware_concurrency();
  const int avail = hw > 0 ? static_cast<int>(hw) : 1;
  if (requested <= 0) return avail;
  return requested < avail ? requested : avail;
}

/// Runs fn(i) for i in [0, count) on up to n_threads workers, pulling work
/// from a shared counter. fn must be safe to call concurrently for distinct
/// indices; exceptions are captured and the first one rethrown after join.
inline void parallel_for(long count, int n_threads,
                         const std::function<void(long)>& fn) {
  if (count <= 0) return;
  const int workers = std::min<long>(resolve_threads(n_threads), count);
  if (workers <= 1) {
    for (long i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<long> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto body = [&] {
    for (;;) {
      const long i = next.fetch_add(1, std::memory_order_relaxed);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int t = 0; t < workers; ++t) pool.emplace_back(body);
  for (auto& th : pool) th.join();
  if (first_error) std::rethrow_exception(first_error);
}

}  // namespace sindex
