#pragma once

#include <atomic>
#include <cstdlib>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace quorum {

// Deterministic parallel map: each task writes only to its own output slot
// and derives any randomness from its own index, so results are identical
// for every worker count (including 1). Work is handed out through a shared
// atomic counter; the schedule may vary between runs but the outputs cannot.
// An exception thrown by any task stops the loop and is rethrown here.
template <typename Fn>
void parallel_for(std::size_t count, std::size_t workers, Fn&& fn) {
  if (count == 0) return;
  if (workers == 0) workers = 1;
  if (workers > count) workers = count;
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      for (;;) {
        if (failed.load(std::memory_order_relaxed)) return;
        std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!error) error = std::current_exception();
          failed.store(true, std::memory_order_relaxed);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

// Worker-count default: QUORUM_WORKERS if set, else hardware concurrency.
inline std::size_t default_workers() {
  if (const char* env = std::getenv("QUORUM_WORKERS")) {
    long v = std::atol(env);
    if (v >= 1) return std::size_t(v);
  }
  unsigned hc = std::thread::hardware_concurrency();
  return hc ? hc : 1;
}

}  // namespace quorum
