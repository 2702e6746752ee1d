//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fragretro/fingerprint.h"
#include "fragretro/stock.h"

namespace fragretro {

// Precomputed screening key of a query.
struct ScreenQuery {
  int heavy_atoms = 0;
  int rings = 0;
  PatternFingerprint fp;
};

ScreenQuery make_screen_query(const Molecule &fragment,
                              const FingerprintParams &params);

inline bool passes_screen(const ScreenQuery &q, const StockEntry &bb) {
  return bb.heavy_atoms >= q.heavy_atoms && bb.rings >= q.rings
         && q.fp.is_subset_of(bb.fp);
}

/// Ids from `prior` (all of the stock when absent), in the given order,
/// whose heavy-atom count, ring count and fingerprint can contain the
/// fragment.
std::vector<int> screen_candidates(const Molecule &fragment, const Stock &stock,
                                   const std::optional<std::vector<int>> &prior = {});

std::vector<int> screen_candidates(const ScreenQuery &query, const Stock &stock,
                                   std::span<const int> prior);
std::vector<int> screen_candidates(const ScreenQuery &query, const Stock &stock);

}  // namespace fragretro
