//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fragretro/engine.h"

// Brute-force reference implementations for tests. Nothing here shares
// code with the matcher or the engine search.
namespace fragretro::oracle {

// Exhaustive injective assignment in query index order.
bool naive_match(const Molecule &query, const Molecule &target);
std::int64_t naive_count(const Molecule &query, const Molecule &target,
                         std::int64_t limit);

// Every connected subset of a k-node graph (k <= 20), sorted by size and
// then members.
std::vector<FragmentSet> all_connected_subsets(int k,
                                               std::span<const FragmentEdge> edges);

// Every set partition of {0..k-1}, blocks ordered by lowest member.
std::vector<std::vector<FragmentSet>> all_partitions(int k);

constexpr int kMaxFragments = 8;

/// Evaluates every connected subset against every entry with naive_match
/// and keeps the partitions whose blocks all match. When some initial
/// fragment matches nothing the result is unsolved and only the valid
/// singletons are reported. Throws TooManyFragments above kMaxFragments.
RetroResult brute_force_retro(const Molecule &target, const Stock &stock,
                              FragmentMode mode);
RetroResult brute_force_decomposition(FragmentDecomposition d,
                                      const Stock &stock);

}  // namespace fragretro::oracle
