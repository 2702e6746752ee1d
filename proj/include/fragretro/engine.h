//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "fragretro/fragment_set.h"
#include "fragretro/fragmenter.h"
#include "fragretro/stock.h"

namespace fragretro {

struct EngineConfig {
  FragmentMode mode = FragmentMode::kBricsLike;
  // Replaces the shipped table for `mode` when set.
  std::optional<RuleSet> rules;
  // Record every matching building block; false stops at the first hit per
  // combination and disables candidate priors.
  bool match_all = true;
  // 0 means unlimited.
  std::size_t max_solutions = 10000;
  int workers = 1;
  bool screening = true;
  // Skip candidates with a failed sub-combination and seed candidate sets
  // from parent matches. Never changes results.
  bool pruning = true;
};

enum class CombinationStatus {
  kUnevaluated,
  kValid,
  kInvalid,
};

struct FragmentCombination {
  FragmentSet members;
  int stage = 0;
  Molecule pattern;
  std::vector<int> matched_bbs;  // ascending ids
  CombinationStatus status = CombinationStatus::kUnevaluated;
};

struct Solution {
  // Ordered by lowest member.
  std::vector<FragmentSet> blocks;

  int size() const { return static_cast<int>(blocks.size()); }

  friend bool operator==(const Solution &, const Solution &) = default;
  friend auto operator<=>(const Solution &a, const Solution &b) {
    if (a.size() != b.size())
      return a.size() <=> b.size();
    return a.blocks <=> b.blocks;
  }
};

struct StageStats {
  int stage = 0;
  std::int64_t generated = 0;  // distinct candidates before pruning
  std::int64_t pruned = 0;
  std::int64_t effective_count = 0;
  std::int64_t valid_count = 0;
  std::int64_t candidates = 0;  // sum of prior sizes
  std::int64_t screen_rejects = 0;
  std::int64_t match_calls = 0;
  double elapsed_seconds = 0;
  std::vector<FragmentSet> effective;  // evaluated member sets, sorted
};

enum class TerminationReason {
  kInitFail,
  kNoEffective,
  kReachedTarget,
  kStageLimit,
  kSolutionCap,
};

std::string_view to_string(TerminationReason reason);

struct RetroResult {
  bool solved = false;
  TerminationReason termination = TerminationReason::kInitFail;
  FragmentDecomposition decomposition;
  // Sorted by stage, then members.
  std::vector<FragmentCombination> valid_combinations;
  std::vector<Solution> solutions;
  bool truncated = false;
  std::vector<StageStats> stats;
  std::int64_t combinations_evaluated = 0;
  double elapsed_seconds = 0;

  std::int64_t total_match_calls() const;
};

RetroResult run(const Molecule &target, const Stock &stock,
                const EngineConfig &config = {});

RetroResult run_decomposition(FragmentDecomposition decomposition,
                              const Stock &stock,
                              const EngineConfig &config = {});

// Same search with screening replaced by the unfiltered prior.
RetroResult run_without_screening(const Molecule &target, const Stock &stock,
                                  EngineConfig config = {});

struct SolutionSet {
  std::vector<Solution> solutions;
  bool truncated = false;
};

/// Partitions of {0..k-1} into blocks drawn from `valid`, by exact cover on
/// the lowest uncovered index, sorted by size and then blocks. The search
/// stops once more than `cap` partitions exist (cap 0: unlimited).
SolutionSet enumerate_solutions(std::span<const FragmentSet> valid, int k,
                                std::size_t cap);

}  // namespace fragretro
