//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <atomic>
#include <stdexcept>

#include "fragretro/parallel.h"

namespace fragretro {
namespace {

TEST(ParallelFor, VisitsEveryIndexOnce) {
  for (const int workers: { 1, 2, 5 }) {
    for (const std::size_t chunk: { std::size_t { 0 }, std::size_t { 1 }, std::size_t { 7 } }) {
      std::vector<std::atomic<int>> hits(1000);
      parallel_for(hits.size(), workers, [&](std::size_t i) { hits[i]++; }, chunk);
      for (const auto &h: hits)
        ASSERT_EQ(h.load(), 1);
    }
  }
}

TEST(ParallelFor, EmptyRange) {
  int calls = 0;
  parallel_for(0, 4, [&](std::size_t) { ++calls; });
  EXPECT_EQ(calls, 0);
}

TEST(ParallelFor, RethrowsWorkerException) {
  EXPECT_THROW(parallel_for(100, 3,
                            [](std::size_t i) {
                              if (i == 57)
                                throw std::runtime_error("boom");
                            }),
               std::runtime_error);
}

TEST(Workers, Resolve) {
  EXPECT_EQ(resolve_workers(3), 3);
  EXPECT_GE(resolve_workers(0), 1);
}

}  // namespace
}  // namespace fragretro
