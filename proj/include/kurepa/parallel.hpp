#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

namespace kurepa {

/// Evaluates task(i) for i in [0, count) on up to `jobs` threads and returns
/// the results in index order. The first exception thrown by a task (lowest
/// index wins) is rethrown after all workers stop.
template <class Task>
auto ordered_map(std::size_t count, unsigned jobs, Task task) -> std::vector<decltype(task(std::size_t{}))> {
  using Result = decltype(task(std::size_t{}));
  std::vector<std::optional<Result>> slots(count);
  std::atomic<std::size_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr error;
  std::size_t error_index = count;

  auto worker = [&] {
    for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
      try {
        slots[i].emplace(task(i));
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
        next.store(count);
      }
    }
  };

  const unsigned threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1u, jobs), count));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (error) std::rethrow_exception(error);

  std::vector<Result> out;
  out.reserve(count);
  for (auto& slot : slots) out.push_back(std::move(*slot));
  return out;
}

}  // namespace kurepa
