#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace gpmap {

/// Worker count from GPMAP_WORKERS, else hardware concurrency (at least 1).
unsigned default_workers();

/// Runs `task(i)` for i in [0, n_tasks) on up to `workers` threads. Tasks are claimed in index
/// order; the first exception thrown by any task is rethrown after all threads have joined.
template <typename Task>
void parallel_for(std::size_t n_tasks, unsigned workers, Task&& task) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(std::max<std::size_t>(n_tasks, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < n_tasks; ++i) task(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next.fetch_add(1); i < n_tasks; i = next.fetch_add(1)) {
          try {
            task(i);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
            next.store(n_tasks);
          }
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

}  // namespace gpmap
