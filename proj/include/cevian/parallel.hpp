#pragma once

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <optional>
#include <thread>
#include <vector>

#include "cevian/real.hpp"

namespace cevian {

/// Worker count used when a caller passes jobs <= 0.
inline int default_jobs() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

/// Evaluates fn(i) for i in [0, n) on up to `jobs` threads and returns the
/// results in index order, so the output never depends on scheduling. The
/// first exception thrown by any call is rethrown after all workers stop.
template <typename Fn>
auto parallel_map(std::size_t n, int jobs, Fn fn) -> std::vector<decltype(fn(std::size_t{}))> {
  using T = decltype(fn(std::size_t{}));
  std::vector<std::optional<T>> slots(n);
  if (jobs <= 0) jobs = default_jobs();
  const std::size_t workers = std::min<std::size_t>(static_cast<std::size_t>(jobs), n);

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i].emplace(fn(i));
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };

  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        work();
        release_thread_caches();
      });
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<T> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

}  // namespace cevian
