//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#include "fragretro/parallel.h"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace fragretro {

int resolve_workers(int requested) {
  if (requested > 0)
    return requested;
  return std::max(1U, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)> &fn,
                  std::size_t chunk) {
  workers = resolve_workers(workers);
  if (n == 0)
    return;
  if (workers == 1 || n == 1) {
    for (std::size_t i = 0; i < n; ++i)
      fn(i);
    return;
  }
  const std::size_t nthreads = std::min<std::size_t>(workers, n);
  if (chunk == 0)
    chunk = std::max<std::size_t>(1, n / (nthreads * 8));

  std::atomic<std::size_t> next { 0 };
  std::atomic<bool> failed { false };
  std::exception_ptr error;
  std::mutex error_mutex;

  auto body = [&] {
    while (!failed.load(std::memory_order_relaxed)) {
      const std::size_t begin = next.fetch_add(chunk);
      if (begin >= n)
        return;
      const std::size_t end = std::min(n, begin + chunk);
      try {
        for (std::size_t i = begin; i < end; ++i)
          fn(i);
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (!error)
          error = std::current_exception();
        failed = true;
        return;
      }
    }
  };

  {
    std::vector<std::jthread> pool;
    pool.reserve(nthreads - 1);
    for (std::size_t t = 1; t < nthreads; ++t)
      pool.emplace_back(body);
    body();
  }
  if (error)
    std::rethrow_exception(error);
}

}  // namespace fragretro
