#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace tsub {

/**
 * Calls fn(i) for i in [0, count) on up to `workers` threads. Indices are
 * handed out through an atomic counter, so results must be written to
 * per-index slots. The first exception thrown by any call is rethrown after
 * all threads join.
 */
template <typename F>
void parallel_for(std::size_t count, int workers, F&& fn) {
  const std::size_t threads = std::clamp<std::size_t>(workers < 1 ? 1 : static_cast<std::size_t>(workers), 1, count);
  if (threads <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < threads; ++w)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < count; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace tsub
