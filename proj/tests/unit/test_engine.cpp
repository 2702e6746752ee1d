//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <random>
#include <set>

#include "support.h"

namespace fragretro {
namespace {

using testing::set_of;

std::vector<FragmentSet> valid_at(const RetroResult &r, int stage) {
  std::vector<FragmentSet> out;
  for (const FragmentCombination &c: r.valid_combinations) {
    if (c.stage == stage)
      out.push_back(c.members);
  }
  return out;
}

class ChainScenario : public ::testing::Test {
 protected:
  Stock stock = testing::stock_of(testing::chain_stock_smiles());
  Molecule target = parse_smiles(testing::kChainTarget);
};

TEST_F(ChainScenario, StagesAndBestSolution) {
  const RetroResult r = run(target, stock);
  ASSERT_EQ(r.decomposition.size(), 6);
  EXPECT_TRUE(r.solved);
  EXPECT_EQ(r.termination, TerminationReason::kNoEffective);
  EXPECT_EQ(valid_at(r, 1).size(), 6u);
  EXPECT_EQ(valid_at(r, 2), (std::vector<FragmentSet> { set_of(6, { 0, 1 }), set_of(6, { 1, 2 }),
                                                        set_of(6, { 4, 5 }) }));
  EXPECT_EQ(valid_at(r, 3), (std::vector<FragmentSet> { set_of(6, { 0, 1, 2 }) }));
  ASSERT_EQ(r.stats.size(), 4u);
  EXPECT_EQ(r.stats[1].effective_count, 5);
  EXPECT_EQ(r.stats[2].generated, 4);
  EXPECT_EQ(r.stats[2].pruned, 3);
  EXPECT_EQ(r.stats[3].effective_count, 0);
  EXPECT_EQ(r.stats[3].match_calls, 0);
  EXPECT_EQ(r.combinations_evaluated, 12);
  ASSERT_FALSE(r.solutions.empty());
  const Solution best { { set_of(6, { 0, 1, 2 }), set_of(6, { 3 }), set_of(6, { 4, 5 }) } };
  EXPECT_EQ(r.solutions.front(), best);
  EXPECT_EQ(r.solutions.size(), 8u);
  EXPECT_FALSE(r.truncated);
}

TEST_F(ChainScenario, MatchedBuildingBlocks) {
  const RetroResult r = run(target, stock);
  for (const FragmentCombination &c: r.valid_combinations) {
    std::vector<int> expected;
    for (int id = 0; id < stock.size(); ++id) {
      if (oracle::naive_match(c.pattern, stock.entry(id).molecule))
        expected.push_back(id);
    }
    EXPECT_EQ(c.matched_bbs, expected);
    EXPECT_EQ(c.status, CombinationStatus::kValid);
  }
  EXPECT_EQ(r.valid_combinations.back().matched_bbs, (std::vector<int> { 0 }));
}

TEST_F(ChainScenario, AgreesWithOracle) {
  EXPECT_EQ(testing::outcome(run(target, stock)),
            testing::outcome(oracle::brute_force_retro(target, stock, FragmentMode::kBricsLike)));
}

TEST_F(ChainScenario, SwitchesDoNotChangeResults) {
  const testing::Outcome base = testing::outcome(run(target, stock));
  for (const bool screening: { true, false }) {
    for (const bool pruning: { true, false }) {
      for (const int workers: { 1, 3 }) {
        EngineConfig cfg;
        cfg.screening = screening;
        cfg.pruning = pruning;
        cfg.workers = workers;
        EXPECT_EQ(testing::outcome(run(target, stock, cfg)), base);
      }
    }
  }
  EXPECT_EQ(testing::outcome(run_without_screening(target, stock)), base);
}

TEST_F(ChainScenario, FirstHitKeepsValidity) {
  EngineConfig cfg;
  cfg.match_all = false;
  const RetroResult r = run(target, stock, cfg);
  const RetroResult all = run(target, stock);
  ASSERT_EQ(r.valid_combinations.size(), all.valid_combinations.size());
  for (std::size_t i = 0; i < r.valid_combinations.size(); ++i) {
    EXPECT_EQ(r.valid_combinations[i].members, all.valid_combinations[i].members);
    ASSERT_EQ(r.valid_combinations[i].matched_bbs.size(), 1u);
    EXPECT_EQ(r.valid_combinations[i].matched_bbs[0], all.valid_combinations[i].matched_bbs[0]);
  }
  EXPECT_EQ(r.solutions, all.solutions);
}

TEST_F(ChainScenario, SolutionCap) {
  EngineConfig cfg;
  cfg.max_solutions = 3;
  const RetroResult r = run(target, stock, cfg);
  EXPECT_TRUE(r.truncated);
  EXPECT_EQ(r.termination, TerminationReason::kSolutionCap);
  ASSERT_EQ(r.solutions.size(), 3u);
  EXPECT_TRUE(std::is_sorted(r.solutions.begin(), r.solutions.end()));
}

TEST(Engine, InitFailStopsAtStageOne) {
  const Molecule target = parse_smiles(testing::kChainTarget);
  const Stock stock = testing::stock_of({ "OC(=O)c1cc(cc(c1)C(C)C)-c1ccccc1", "NCCO", "CCCC" });
  const RetroResult r = run(target, stock);
  EXPECT_FALSE(r.solved);
  EXPECT_EQ(r.termination, TerminationReason::kInitFail);
  ASSERT_EQ(r.stats.size(), 1u);
  EXPECT_EQ(r.total_match_calls(), r.stats[0].match_calls);
  EXPECT_TRUE(r.solutions.empty());
  EXPECT_EQ(valid_at(r, 1).size(), 4u);
  EXPECT_EQ(testing::outcome(r),
            testing::outcome(oracle::brute_force_retro(target, stock, FragmentMode::kBricsLike)));
}

TEST(Engine, SingleFragmentTarget) {
  const Stock stock = testing::stock_of({ "CCCCO", "c1ccccc1" });
  const RetroResult r = run(parse_smiles("c1ccccc1"), stock);
  EXPECT_TRUE(r.solved);
  EXPECT_EQ(r.termination, TerminationReason::kReachedTarget);
  ASSERT_EQ(r.solutions.size(), 1u);
  EXPECT_EQ(r.combinations_evaluated, 1);
  EXPECT_EQ(r.valid_combinations[0].matched_bbs, (std::vector<int> { 1 }));
}

TEST(Engine, WholeTargetInStockReachesTarget) {
  const Molecule t = parse_smiles("CC(=O)NCC(=O)OC");
  const Stock stock = testing::stock_of({ write_smiles(t) });
  const RetroResult r = run(t, stock);
  EXPECT_EQ(r.termination, TerminationReason::kReachedTarget);
  EXPECT_EQ(r.decomposition.size(), 3);
  EXPECT_EQ(r.combinations_evaluated, 6);
  EXPECT_EQ(r.solutions.front().size(), 1);
}

TEST(Engine, TerminationNames) {
  EXPECT_EQ(to_string(TerminationReason::kInitFail), "init_fail");
  EXPECT_EQ(to_string(TerminationReason::kNoEffective), "no_effective");
  EXPECT_EQ(to_string(TerminationReason::kReachedTarget), "reached_target");
  EXPECT_EQ(to_string(TerminationReason::kStageLimit), "stage_limit");
  EXPECT_EQ(to_string(TerminationReason::kSolutionCap), "solution_cap");
}

TEST(Engine, EmptyStockFailsCleanly) {
  const RetroResult r = run(parse_smiles("CC(=O)NC"), Stock());
  EXPECT_FALSE(r.solved);
  EXPECT_EQ(r.termination, TerminationReason::kInitFail);
}

// Ordering and copies must not depend on whether the bits live inline.
TEST(FragmentSetOrder, LexicographicOverMembers) {
  std::mt19937_64 rng(7);
  for (const int universe: { 5, 64, 100, 200 }) {
    for (int trial = 0; trial < 500; ++trial) {
      FragmentSet a(universe), b(universe);
      for (int i = 0; i < universe; ++i) {
        if (rng() % 7 == 0)
          a.insert(i);
        if (rng() % 7 == 0)
          b.insert(i);
      }
      if (trial % 3 == 0)
        b = a;
      if (trial % 5 == 0 && universe > 1)
        b.insert(universe - 1);
      const FragmentSet copy = a;
      EXPECT_EQ(copy, a);
      EXPECT_EQ(copy.members(), a.members());
      EXPECT_EQ(a <=> b, a.members() <=> b.members()) << universe;
      EXPECT_EQ((a | b).members().size(), static_cast<std::size_t>((a | b).size()));
    }
  }
}

TEST(Solutions, PathOfThree) {
  const std::vector<FragmentSet> valid { set_of(3, { 0 }), set_of(3, { 1 }), set_of(3, { 2 }),
                                         set_of(3, { 0, 1 }), set_of(3, { 1, 2 }),
                                         set_of(3, { 0, 1, 2 }) };
  const SolutionSet s = enumerate_solutions(valid, 3, 0);
  ASSERT_EQ(s.solutions.size(), 4u);
  EXPECT_EQ(s.solutions[0].blocks, (std::vector<FragmentSet> { set_of(3, { 0, 1, 2 }) }));
  EXPECT_EQ(s.solutions[1].blocks,
            (std::vector<FragmentSet> { set_of(3, { 0 }), set_of(3, { 1, 2 }) }));
  EXPECT_EQ(s.solutions[2].blocks,
            (std::vector<FragmentSet> { set_of(3, { 0, 1 }), set_of(3, { 2 }) }));
  EXPECT_EQ(s.solutions[3].size(), 3);
  EXPECT_FALSE(s.truncated);
}

TEST(Solutions, MatchesPartitionFilter) {
  synth::Rng rng(5);
  for (int trial = 0; trial < 200; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 7);
    std::vector<FragmentSet> valid;
    for (int i = 0; i < k; ++i)
      valid.push_back(set_of(k, { i }));
    for (int extra = 0; extra < 12; ++extra) {
      FragmentSet s(k);
      for (int i = 0; i < k; ++i) {
        if (rng() % 3 == 0)
          s.insert(i);
      }
      if (s.size() >= 2 && std::find(valid.begin(), valid.end(), s) == valid.end())
        valid.push_back(s);
    }
    const std::set<FragmentSet> lookup(valid.begin(), valid.end());
    std::vector<Solution> expected;
    for (const auto &blocks: oracle::all_partitions(k)) {
      if (std::all_of(blocks.begin(), blocks.end(),
                      [&](const FragmentSet &b) { return lookup.contains(b); }))
        expected.push_back({ blocks });
    }
    std::sort(expected.begin(), expected.end());
    EXPECT_EQ(enumerate_solutions(valid, k, 0).solutions, expected);
  }
}

TEST(Solutions, CapTruncates) {
  std::vector<FragmentSet> valid;
  for (int i = 0; i < 6; ++i)
    valid.push_back(set_of(6, { i }));
  for (int i = 0; i + 1 < 6; ++i)
    valid.push_back(set_of(6, { i, i + 1 }));
  const SolutionSet all = enumerate_solutions(valid, 6, 0);
  EXPECT_EQ(all.solutions.size(), 13u);
  const SolutionSet capped = enumerate_solutions(valid, 6, 13);
  EXPECT_FALSE(capped.truncated);
  EXPECT_EQ(capped.solutions.size(), 13u);
  const SolutionSet less = enumerate_solutions(valid, 6, 5);
  EXPECT_TRUE(less.truncated);
  EXPECT_EQ(less.solutions.size(), 5u);
}

TEST(Engine, MatchesOracleOnRandomTargets) {
  synth::Rng rng(404);
  for (int trial = 0; trial < 15; ++trial) {
    const Molecule t = synth::random_target(rng, 2, 6);
    const FragmentDecomposition d = fragment(t, FragmentMode::kBricsLike);
    const Stock stock = testing::stock_of(synth::toy_stock(rng, d, 60));
    EXPECT_EQ(testing::outcome(run(t, stock)),
              testing::outcome(oracle::brute_force_retro(t, stock, FragmentMode::kBricsLike)))
      << write_smiles(t);
  }
}

}  // namespace
}  // namespace fragretro
