#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <functional>
#include <mutex>
#include <thread>
#include <vector>

namespace cmap {

// Runs fn(i) for every i in [0, n_chunks) on up to `jobs` threads.  Chunk
// index assignment is dynamic, so callers must keep per-chunk state in slots
// indexed by i and merge in index order — then results are independent of the
// execution schedule.
inline void run_chunks(std::size_t n_chunks, int jobs,
                       const std::function<void(std::size_t)>& fn) {
  if (jobs < 1) jobs = 1;
  if (n_chunks <= 1 || jobs == 1) {
    for (std::size_t i = 0; i < n_chunks; ++i) fn(i);
    return;
  }
  std::size_t workers = std::min<std::size_t>(jobs, n_chunks);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mu;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (;;) {
        std::size_t i = next.fetch_add(1);
        if (i >= n_chunks || failed.load()) return;
        try {
          fn(i);
        } catch (...) {
          std::lock_guard<std::mutex> lk(error_mu);
          if (!error) error = std::current_exception();
          failed.store(true);
          return;
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace cmap
