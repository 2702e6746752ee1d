//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include "support.h"

namespace fragretro {
namespace {

TEST(Screen, PropertyFilters) {
  const Stock stock = testing::stock_of({ "CC", "CCCC(=O)N", "C1CCCCC1C(=O)N", "c1ccccc1" });
  const ScreenQuery q = make_screen_query(parse_smiles("CCC(=O)*"), stock.params());
  EXPECT_EQ(q.heavy_atoms, 4);
  EXPECT_EQ(q.rings, 0);
  EXPECT_FALSE(passes_screen(q, stock.entry(0)));
  EXPECT_TRUE(passes_screen(q, stock.entry(1)));

  const ScreenQuery ring = make_screen_query(parse_smiles("C1CCCCC1*"), stock.params());
  EXPECT_EQ(ring.rings, 1);
  EXPECT_EQ(screen_candidates(parse_smiles("C1CCCCC1*"), stock), (std::vector<int> { 2 }));
}

TEST(Screen, PriorRestrictsCandidates) {
  const Stock stock = testing::stock_of({ "CCO", "CCCO", "CCCCO", "OCCCCCO" });
  const Molecule q = parse_smiles("CCO");
  EXPECT_EQ(screen_candidates(q, stock), (std::vector<int> { 0, 1, 2, 3 }));
  EXPECT_EQ(screen_candidates(q, stock, std::vector<int> { 1, 3 }),
            (std::vector<int> { 1, 3 }));
  EXPECT_TRUE(screen_candidates(q, stock, std::vector<int> {}).empty());
}

TEST(Screen, NeverRejectsAMatch) {
  synth::Rng rng(101);
  std::vector<synth::MatchPair> pairs;
  std::vector<std::string> targets;
  for (int i = 0; i < 400; ++i) {
    pairs.push_back(synth::random_match_pair(rng));
    targets.push_back(write_smiles(pairs.back().target));
  }
  const Stock stock = testing::stock_of(targets);
  for (const synth::MatchPair &p: pairs) {
    std::vector<int> expected;
    for (int id = 0; id < static_cast<int>(stock.size()); ++id) {
      if (oracle::naive_match(p.query, stock.entry(id).molecule))
        expected.push_back(id);
    }
    const std::vector<int> passed = screen_candidates(p.query, stock);
    for (int id: expected)
      ASSERT_TRUE(std::binary_search(passed.begin(), passed.end(), id))
        << write_smiles(p.query) << " vs " << stock.entry(id).smiles;
  }
}

}  // namespace
}  // namespace fragretro
