//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include "support.h"

namespace fragretro {
namespace {

using testing::set_of;

TEST(NaiveMatch, Examples) {
  EXPECT_TRUE(oracle::naive_match(parse_smiles("CC(=O)*"), parse_smiles("CC(=O)NC")));
  EXPECT_FALSE(oracle::naive_match(parse_smiles("CC(=O)*"), parse_smiles("CCC(=O)N")));
  EXPECT_EQ(oracle::naive_count(parse_smiles("c1ccccc1"), parse_smiles("c1ccccc1"), 100), 12);
  EXPECT_EQ(oracle::naive_count(parse_smiles("*C"), parse_smiles("CCC"), 100), 2);
  EXPECT_EQ(oracle::naive_count(parse_smiles("*C"), parse_smiles("CCC"), 1), 1);
}

TEST(ConnectedSubsets, Path) {
  const std::vector<FragmentEdge> edges { { 0, 1, 10 }, { 1, 2, 11 }, { 2, 3, 12 } };
  const auto subsets = oracle::all_connected_subsets(4, edges);
  EXPECT_EQ(subsets.size(), 10u);
  EXPECT_EQ(subsets.front(), set_of(4, { 0 }));
  EXPECT_EQ(subsets[4], set_of(4, { 0, 1 }));
  EXPECT_EQ(subsets.back(), set_of(4, { 0, 1, 2, 3 }));
}

TEST(ConnectedSubsets, Star) {
  const std::vector<FragmentEdge> edges { { 0, 1, 1 }, { 0, 2, 2 }, { 0, 3, 3 }, { 0, 4, 4 } };
  // 5 singletons plus every non-empty leaf subset joined to the hub.
  EXPECT_EQ(oracle::all_connected_subsets(5, edges).size(), 5u + 15u);
}

TEST(ConnectedSubsets, Cycle) {
  const std::vector<FragmentEdge> edges { { 0, 1, 1 }, { 1, 2, 2 }, { 2, 3, 3 }, { 0, 3, 4 } };
  // 4 singletons, 4 arcs of two, 4 arcs of three, the whole ring.
  EXPECT_EQ(oracle::all_connected_subsets(4, edges).size(), 13u);
}

TEST(Partitions, BellNumbers) {
  const std::vector<std::size_t> bell { 1, 2, 5, 15, 52, 203, 877, 4140 };
  for (int k = 1; k <= 8; ++k)
    EXPECT_EQ(oracle::all_partitions(k).size(), bell[k - 1]) << k;
  for (const auto &p: oracle::all_partitions(5)) {
    FragmentSet u(5);
    int total = 0;
    for (const FragmentSet &b: p) {
      EXPECT_FALSE(b.intersects(u));
      u = u | b;
      total += b.size();
    }
    EXPECT_EQ(total, 5);
  }
}

TEST(BruteForce, ChainScenario) {
  const Stock stock = testing::stock_of(testing::chain_stock_smiles());
  const RetroResult r = oracle::brute_force_retro(parse_smiles(testing::kChainTarget), stock,
                                                  FragmentMode::kBricsLike);
  EXPECT_TRUE(r.solved);
  EXPECT_EQ(r.valid_combinations.size(), 10u);
  EXPECT_EQ(r.solutions.size(), 8u);
  EXPECT_EQ(r.solutions.front().size(), 3);
}

TEST(BruteForce, GuardsFragmentCount) {
  const Molecule big = synth::oligomer(9);
  const Stock stock = testing::stock_of({ write_smiles(big) });
  EXPECT_THROW(oracle::brute_force_retro(big, stock, FragmentMode::kBricsLike),
               TooManyFragments);
}

}  // namespace
}  // namespace fragretro
