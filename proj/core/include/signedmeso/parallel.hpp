#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace signedmeso {

/// Number of worker threads used by parallel loops. 0 means
/// std::thread::hardware_concurrency().
struct Threads {
  unsigned count = 1;

  unsigned resolve() const {
    if (count != 0) return count;
    return std::max(1u, std::thread::hardware_concurrency());
  }
};

/// Runs body(i) for i in [0, n). Tasks are independent; callers write results
/// into per-index slots and reduce afterwards in index order, which keeps
/// output identical for any thread count. The first exception thrown by a
/// task is rethrown on the calling thread.
template <typename Body>
void parallel_for(std::size_t n, Threads threads, Body&& body) {
  const std::size_t workers = std::min<std::size_t>(threads.resolve(), n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        body(i);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next.store(n);
        return;
      }
    }
  };

  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
  pool.clear();  // joins
  if (failure) std::rethrow_exception(failure);
}

}  // namespace signedmeso
