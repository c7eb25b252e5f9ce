#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <thread>
#include <vector>

namespace shellbreak::detail {

/// Runs task(i) for i in [0, count) on up to `threads` workers. Each task writes only its own
/// slot, so results are identical to a serial run. The exception of the lowest failing index is
/// rethrown after all workers finish.
template <class Task>
void parallel_for(std::size_t count, int threads, Task&& task) {
  const std::size_t workers = std::min<std::size_t>(count, threads > 1 ? static_cast<std::size_t>(threads) : 1);
  if (workers <= 1) {
    for (std::size_t i = 0; i < count; ++i) task(i);
    return;
  }
  std::vector<std::exception_ptr> errors(count);
  std::atomic<std::size_t> next{0};
  {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < count; i = next++) {
          try {
            task(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace shellbreak::detail
