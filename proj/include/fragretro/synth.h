//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "fragretro/fragmenter.h"

// Seeded generators of molecules, stocks and benchmark inputs for tests
// and benchmarks.
namespace fragretro::synth {

using Rng = std::mt19937_64;

struct MoleculeOptions {
  int min_heavy = 4;
  int max_heavy = 24;
  double ring_closure = 0.15;  // chance of one extra ring closure
  double charged = 0.03;       // chance per added unit of a charged cap
};

Molecule random_molecule(Rng &rng, const MoleculeOptions &options = {});

// Random target whose decomposition has min..max fragments.
Molecule random_target(Rng &rng, int min_fragments, int max_fragments,
                       FragmentMode mode = FragmentMode::kBricsLike,
                       int max_heavy = 40);

/// Replaces every attachment atom by hydrogen or by a small group; a
/// `grow` of zero keeps caps to single atoms.
Molecule cap_pattern(Rng &rng, const Molecule &pattern, int grow = 0);

// Random connected member set of a decomposition of size <= max_size.
FragmentSet random_connected_members(Rng &rng, const FragmentDecomposition &d,
                                     int max_size);

/// SMILES lines of a toy stock for a decomposition: capped patterns of
/// random combinations, larger superstructures and unrelated fillers.
std::vector<std::string> toy_stock(Rng &rng, const FragmentDecomposition &d,
                                   int size);

struct MatchPair {
  Molecule query;
  Molecule target;
};

/// Query with <= 12 heavy atoms and a target with <= 24. Half the queries
/// are cut out of the target, some of those perturbed; the rest are
/// unrelated.
MatchPair random_match_pair(Rng &rng);

// Query cut out of `target` around a random connected atom set.
Molecule derived_query(Rng &rng, const Molecule &target, int max_atoms);

// NCCC(=O) repeats joined by amides, ending in an acid.
Molecule oligomer(int units);

struct Benchmark {
  std::vector<std::string> stock;    // SMILES
  std::vector<std::string> targets;  // SMILES
};

/// Targets of 30-60 heavy atoms assembled from ring synthons joined by
/// amide, ester, sulfonamide and biaryl links, and a stock holding capped
/// pieces of them among random fillers.
Benchmark desk_benchmark(std::uint64_t seed, int stock_size = 100000,
                         int num_targets = 20);

}  // namespace fragretro::synth
