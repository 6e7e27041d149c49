#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sstl::detail {

inline unsigned resolve_jobs(unsigned jobs) {
  if (jobs != 0) return jobs;
  return std::max(1u, std::thread::hardware_concurrency());
}

/// Calls fn(worker, i) for i in [0, count). Work is handed out dynamically,
/// so callers must write results into index-addressed slots. If several
/// indices throw, the exception of the smallest index is rethrown.
template <class Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  const unsigned workers =
      static_cast<unsigned>(std::min<std::size_t>(resolve_jobs(jobs), std::max<std::size_t>(count, 1)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(0u, i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::size_t error_index = count;
  std::exception_ptr error;
  auto body = [&](unsigned worker) {
    for (std::size_t i = next++; i < count; i = next++) {
      try {
        fn(worker, i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
      }
    }
  };
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers - 1);
    for (unsigned w = 1; w < workers; ++w) pool.emplace_back(body, w);
    body(0);
  }
  if (error) std::rethrow_exception(error);
}

} // namespace sstl::detail
