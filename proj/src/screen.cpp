//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#include "fragretro/screen.h"

namespace fragretro {

ScreenQuery make_screen_query(const Molecule &fragment,
                              const FingerprintParams &params) {
  return { fragment.heavy_atom_count(), fragment.ring_count(),
           fingerprint(fragment, params) };
}

std::vector<int> screen_candidates(const ScreenQuery &query, const Stock &stock,
                                   std::span<const int> prior) {
  std::vector<int> out;
  for (int id: prior) {
    if (passes_screen(query, stock.entry(id)))
      out.push_back(id);
  }
  return out;
}

std::vector<int> screen_candidates(const ScreenQuery &query,
                                   const Stock &stock) {
  std::vector<int> out;
  for (const StockEntry &bb: stock.entries()) {
    if (passes_screen(query, bb))
      out.push_back(bb.id);
  }
  return out;
}

std::vector<int> screen_candidates(const Molecule &fragment, const Stock &stock,
                                   const std::optional<std::vector<int>> &prior) {
  const ScreenQuery q = make_screen_query(fragment, stock.params());
  return prior ? screen_candidates(q, stock, *prior)
               : screen_candidates(q, stock);
}

}  // namespace fragretro
