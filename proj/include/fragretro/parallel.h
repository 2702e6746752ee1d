//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <functional>

namespace fragretro {

/// Calls fn(i) for every i in [0, n) on `workers` threads, handing out
/// contiguous chunks on demand. The first exception thrown by fn is
/// rethrown on the calling thread after all workers stop.
void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)> &fn,
                  std::size_t chunk = 0);

// Worker count for a request of 0 (hardware concurrency, at least 1).
int resolve_workers(int requested);

}  // namespace fragretro
