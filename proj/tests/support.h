//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <initializer_list>
#include <string>
#include <vector>

#include "fragretro/engine.h"
#include "fragretro/errors.h"
#include "fragretro/fragmenter.h"
#include "fragretro/matcher.h"
#include "fragretro/screen.h"
#include "fragretro/molgraph.h"
#include "fragretro/oracle.h"
#include "fragretro/stock.h"
#include "fragretro/synth.h"

namespace fragretro::testing {

// Chain scenario: biphenyl acid, isopropyl, aminoethanol linker, and a
// pyridyl phenol ether.
inline constexpr const char *kChainTarget =
  "c1ccc(cc1)-c1cc(C(C)C)cc(c1)C(=O)NCCOc1ccc(cc1)-c1ccncc1";

inline std::vector<std::string> chain_stock_smiles() {
  return {
    "OC(=O)c1cc(cc(c1)C(C)C)-c1ccccc1",
    "NCCO",
    "Oc1ccc(cc1)-c1ccncc1",
    "CC(C)CCCl",
    "c1ccc2ccccc2c1",
    "OCC(=O)OC",
  };
}

inline FragmentSet set_of(int universe, std::initializer_list<int> members) {
  FragmentSet s(universe);
  for (int m: members)
    s.insert(m);
  return s;
}

inline std::string join_lines(const std::vector<std::string> &lines) {
  std::string out;
  for (const std::string &l: lines)
    out += l + "\n";
  return out;
}

inline Stock stock_of(const std::vector<std::string> &smiles,
                      const FingerprintParams &params = {}) {
  return build_stock_from_text(join_lines(smiles), params);
}

// Graph isomorphism for attachment-free molecules, checked with the naive
// matcher: an injective, induced, degree-preserving map between graphs of
// equal size is an isomorphism.
inline bool same_graph(const Molecule &a, const Molecule &b) {
  return a.num_atoms() == b.num_atoms() && a.num_bonds() == b.num_bonds()
         && oracle::naive_match(a, b);
}

// Folds fragments back together with merge(), growing from fragment 0.
inline Molecule reassemble(const FragmentDecomposition &d) {
  if (d.size() == 1)
    return d.fragments[0];
  Molecule acc = d.fragments[0];
  std::vector<char> used(d.size(), 0);
  used[0] = 1;
  for (int added = 1; added < d.size(); ++added) {
    int next = -1;
    std::vector<int> ids;
    for (int f = 0; f < d.size() && next < 0; ++f) {
      if (used[f])
        continue;
      for (const FragmentEdge &e: d.adjacency) {
        if ((e.a == f && used[e.b]) || (e.b == f && used[e.a]))
          ids.push_back(e.bond_id);
      }
      if (!ids.empty())
        next = f;
    }
    acc = merge(acc, d.fragments[next], ids);
    used[next] = 1;
  }
  return acc;
}

inline std::vector<Molecule> random_corpus(std::uint64_t seed, int n) {
  synth::Rng rng(seed);
  std::vector<Molecule> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i)
    out.push_back(synth::random_molecule(rng));
  return out;
}

// Valid sets and solutions, comparable across engine and oracle output.
struct Outcome {
  bool solved;
  std::vector<std::pair<FragmentSet, std::vector<int>>> valid;
  std::vector<Solution> solutions;

  friend bool operator==(const Outcome &, const Outcome &) = default;
};

inline Outcome outcome(const RetroResult &r) {
  Outcome o { r.solved, {}, r.solutions };
  for (const FragmentCombination &c: r.valid_combinations)
    o.valid.emplace_back(c.members, c.matched_bbs);
  return o;
}

}  // namespace fragretro::testing
