#pragma once

#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace olive {

/// Worker count: the value passed to set_thread_count if positive, else
/// OLIVE_THREADS if set to a positive integer, else hardware concurrency.
int thread_count();

/// Overrides OLIVE_THREADS for this process; 0 restores the default.
void set_thread_count(int n);

/// out[i] = fn(i) for i < n, computed on thread_count() workers. Results are
/// placed by index, so the output does not depend on scheduling. The first
/// exception thrown by any call is rethrown after all workers stop.
template <class R, class Fn>
std::vector<R> parallel_map(std::size_t n, Fn&& fn) {
  std::vector<R> out(n);
  const auto workers = static_cast<std::size_t>(thread_count());
  if (workers <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        out[i] = fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error) error = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < std::min(workers, n); ++w) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return out;
}

}  // namespace olive
