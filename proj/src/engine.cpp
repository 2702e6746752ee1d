//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#include "fragretro/engine.h"

#include <algorithm>
#include <chrono>
#include <iterator>
#include <memory>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "fragretro/matcher.h"
#include "fragretro/parallel.h"
#include "fragretro/screen.h"

namespace fragretro {
namespace {

using Clock = std::chrono::steady_clock;

constexpr std::size_t kCandidateChunk = 512;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

std::vector<int> intersect(const std::vector<int> &a,
                           const std::vector<int> &b) {
  std::vector<int> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(),
                        std::back_inserter(out));
  return out;
}

std::vector<int> unite(const std::vector<int> &a, const std::vector<int> &b) {
  std::vector<int> out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return out;
}

struct Candidate {
  FragmentSet members;
  std::vector<int> prior;  // ascending
  // First generating parent (index into the previous level) and the
  // fragment added to it.
  int parent = -1;
  int added = -1;
};

class Search {
 public:
  Search(FragmentDecomposition d, const Stock &stock, const EngineConfig &cfg)
    : stock_(stock), cfg_(cfg), workers_(resolve_workers(cfg.workers)) {
    result_.decomposition = std::move(d);
    k_ = result_.decomposition.size();
    neighbors_ = result_.decomposition.neighbor_lists();
    for (int f = 0; f < k_; ++f) {
      FragmentSet mask(k_);
      for (int g: neighbors_[f])
        mask.insert(g);
      neighbor_masks_.push_back(std::move(mask));
    }
    incident_.resize(k_);
    for (const FragmentEdge &e: result_.decomposition.adjacency) {
      incident_[e.a].emplace_back(e.b, e.bond_id);
      incident_[e.b].emplace_back(e.a, e.bond_id);
    }
    all_ids_.resize(stock.size());
    std::iota(all_ids_.begin(), all_ids_.end(), 0);
  }

  RetroResult run() {
    const auto start = Clock::now();
    std::vector<Candidate> stage1;
    for (int f = 0; f < k_; ++f)
      stage1.push_back({ FragmentSet::singleton(k_, f), all_ids_ });
    StageStats s1;
    s1.stage = 1;
    s1.generated = k_;
    std::vector<FragmentCombination> level = evaluate(1, stage1, s1);
    result_.stats.push_back(std::move(s1));

    bool init_ok = static_cast<int>(level.size()) == k_;
    for (FragmentCombination &c: level)
      singleton_matches_.push_back(c.matched_bbs);
    singleton_fps_ = level_fps_;
    keep(level);

    if (!init_ok) {
      result_.termination = TerminationReason::kInitFail;
    } else if (k_ == 1) {
      result_.termination = TerminationReason::kReachedTarget;
    } else {
      result_.termination = TerminationReason::kReachedTarget;
      std::vector<FragmentCombination> prev = std::move(level);
      for (int n = 2; n <= k_; ++n) {
        StageStats st;
        st.stage = n;
        const auto gen_start = Clock::now();
        std::vector<Candidate> cands = generate(prev, st);
        if (cands.empty()) {
          st.elapsed_seconds = seconds_since(gen_start);
          result_.stats.push_back(std::move(st));
          result_.termination = TerminationReason::kNoEffective;
          break;
        }
        std::vector<FragmentCombination> next = evaluate(n, cands, st);
        st.elapsed_seconds = seconds_since(gen_start);
        result_.stats.push_back(std::move(st));
        prev = std::move(next);
        keep(prev);
      }
    }

    if (init_ok) {
      std::vector<FragmentSet> valid;
      for (const FragmentCombination &c: result_.valid_combinations)
        valid.push_back(c.members);
      SolutionSet sols = enumerate_solutions(valid, k_, cfg_.max_solutions);
      result_.solutions = std::move(sols.solutions);
      result_.truncated = sols.truncated;
      if (sols.truncated)
        result_.termination = TerminationReason::kSolutionCap;
    }
    result_.solved = !result_.solutions.empty();
    std::sort(result_.valid_combinations.begin(),
              result_.valid_combinations.end(),
              [](const FragmentCombination &a, const FragmentCombination &b) {
                if (a.stage != b.stage)
                  return a.stage < b.stage;
                return a.members < b.members;
              });
    result_.elapsed_seconds = seconds_since(start);
    return std::move(result_);
  }

 private:
  // Members whose removal disconnects the induced fragment graph.
  std::vector<char> cut_members(const std::vector<int> &list,
                                const FragmentSet &set) const {
    const int n = static_cast<int>(list.size());
    std::vector<int> local(k_, -1);
    for (int i = 0; i < n; ++i)
      local[list[i]] = i;
    std::vector<int> disc(n, -1), low(n, 0);
    std::vector<char> cut(n, 0);
    int time = 0;
    auto dfs = [&](auto &&self, int u, int parent) -> void {
      disc[u] = low[u] = time++;
      int children = 0;
      for (int g: neighbors_[list[u]]) {
        if (!set.contains(g))
          continue;
        const int v = local[g];
        if (disc[v] < 0) {
          ++children;
          self(self, v, u);
          low[u] = std::min(low[u], low[v]);
          if (parent >= 0 && low[v] >= disc[u])
            cut[u] = 1;
        } else if (v != parent) {
          low[u] = std::min(low[u], disc[v]);
        }
      }
      if (parent < 0 && children > 1)
        cut[u] = 1;
    };
    dfs(dfs, 0, -1);
    return cut;
  }

  // Every connected (n-1)-subset must have been evaluated valid.
  bool survives_pruning(const FragmentSet &set) const {
    if (set.size() <= 2)
      return true;
    const std::vector<int> list = set.members();
    const std::vector<char> cut = cut_members(list, set);
    for (std::size_t i = 0; i < list.size(); ++i) {
      if (cut[i])
        continue;
      FragmentSet sub = set;
      sub.erase(list[i]);
      if (!prev_valid_.contains(sub))
        return false;
    }
    return true;
  }

  std::vector<Candidate> generate(const std::vector<FragmentCombination> &prev,
                                  StageStats &st) {
    const bool priors = cfg_.pruning && cfg_.match_all;
    prev_valid_.clear();
    prev_members_.clear();
    for (const FragmentCombination &c: prev) {
      prev_valid_.insert(c.members);
      prev_members_.push_back(c.members);
    }

    std::unordered_map<FragmentSet, std::size_t, FragmentSetHash> index;
    std::vector<Candidate> cands;
    for (std::size_t p = 0; p < prev.size(); ++p) {
      const FragmentCombination &c = prev[p];
      FragmentSet frontier(k_);
      for (int x: c.members.members())
        frontier = frontier | neighbor_masks_[x];
      for (int j: frontier.members()) {
        if (c.members.contains(j))
          continue;
        FragmentSet s = c.members;
        s.insert(j);
        auto [it, inserted] = index.emplace(s, cands.size());
        if (inserted)
          cands.push_back({ std::move(s), {}, static_cast<int>(p), j });
        if (priors) {
          Candidate &cand = cands[it->second];
          cand.prior =
            unite(cand.prior, intersect(c.matched_bbs, singleton_matches_[j]));
        }
      }
    }
    st.generated = static_cast<std::int64_t>(cands.size());
    if (cfg_.pruning) {
      std::erase_if(cands, [&](const Candidate &c) {
        return !survives_pruning(c.members);
      });
    }
    st.pruned = st.generated - static_cast<std::int64_t>(cands.size());
    if (!priors) {
      for (Candidate &c: cands)
        c.prior = all_ids_;
    }
    std::sort(cands.begin(), cands.end(),
              [](const Candidate &a, const Candidate &b) {
                return a.members < b.members;
              });
    return cands;
  }

  std::vector<FragmentCombination> evaluate(int n,
                                            std::vector<Candidate> &cands,
                                            StageStats &st) {
    const auto start = Clock::now();
    const std::size_t nc = cands.size();
    std::vector<FragmentCombination> combos(nc);
    std::vector<std::unique_ptr<SubstructureQuery>> queries(nc);
    std::vector<ScreenQuery> screens(nc);

    parallel_for(nc, workers_, [&](std::size_t i) {
      FragmentCombination &c = combos[i];
      c.members = cands[i].members;
      c.stage = n;
      std::vector<std::pair<int, int>> joined;
      c.pattern = combination_pattern(result_.decomposition, c.members, joined);
      queries[i] = std::make_unique<SubstructureQuery>(c.pattern);
      if (!cfg_.screening)
        return;
      if (cands[i].parent < 0) {
        screens[i] = make_screen_query(c.pattern, stock_.params());
        return;
      }
      screens[i] = join_screens(cands[i], c.pattern, joined);
    }, 1);

    struct Task {
      std::size_t combo;
      std::size_t begin;
      std::size_t end;
      std::vector<int> hits;
      std::int64_t rejects = 0;
      std::int64_t calls = 0;
    };
    std::vector<Task> tasks;
    for (std::size_t i = 0; i < nc; ++i) {
      const std::size_t size = cands[i].prior.size();
      st.candidates += static_cast<std::int64_t>(size);
      if (!cfg_.match_all) {
        tasks.push_back({ i, 0, size, {}, 0, 0 });
        continue;
      }
      for (std::size_t b = 0; b < size; b += kCandidateChunk)
        tasks.push_back({ i, b, std::min(size, b + kCandidateChunk), {}, 0, 0 });
    }

    parallel_for(tasks.size(), workers_, [&](std::size_t t) {
      Task &task = tasks[t];
      const std::vector<int> &prior = cands[task.combo].prior;
      const SubstructureQuery &q = *queries[task.combo];
      for (std::size_t k = task.begin; k < task.end; ++k) {
        const StockEntry &bb = stock_.entry(prior[k]);
        if (cfg_.screening && !passes_screen(screens[task.combo], bb)) {
          ++task.rejects;
          continue;
        }
        ++task.calls;
        if (q.matches(bb.molecule)) {
          task.hits.push_back(bb.id);
          if (!cfg_.match_all)
            break;
        }
      }
    }, 1);

    for (Task &task: tasks) {
      auto &hits = combos[task.combo].matched_bbs;
      hits.insert(hits.end(), task.hits.begin(), task.hits.end());
      st.screen_rejects += task.rejects;
      st.match_calls += task.calls;
    }

    std::vector<FragmentCombination> valid;
    level_fps_.clear();
    for (std::size_t i = 0; i < nc; ++i) {
      st.effective.push_back(combos[i].members);
      FragmentCombination &c = combos[i];
      c.status = c.matched_bbs.empty() ? CombinationStatus::kInvalid
                                       : CombinationStatus::kValid;
      if (c.status == CombinationStatus::kValid) {
        valid.push_back(std::move(c));
        level_fps_.push_back(std::move(screens[i].fp));
      }
    }
    st.effective_count = static_cast<std::int64_t>(nc);
    st.valid_count = static_cast<std::int64_t>(valid.size());
    st.elapsed_seconds = seconds_since(start);
    result_.combinations_evaluated += static_cast<std::int64_t>(nc);
    return valid;
  }

  // Bits of the parent and the added fragment plus the paths across the
  // bonds that join them. Every match of the merge matches both halves, so
  // the result never rejects a match.
  ScreenQuery join_screens(const Candidate &cand, const Molecule &pattern,
                           const std::vector<std::pair<int, int>> &joined) const {
    ScreenQuery q;
    q.heavy_atoms = pattern.heavy_atom_count();
    q.rings = pattern.ring_count();
    q.fp = level_fps_[cand.parent];
    q.fp |= singleton_fps_[cand.added];
    const FragmentSet &parent = prev_members_[cand.parent];
    std::vector<int> across;
    for (const auto &[other, id]: incident_[cand.added]) {
      if (!parent.contains(other))
        continue;
      const auto it = std::lower_bound(
        joined.begin(), joined.end(), id,
        [](const std::pair<int, int> &p, int v) { return p.first < v; });
      across.push_back(it->second);
    }
    add_paths_through(pattern, across, stock_.params(), q.fp);
    return q;
  }

  void keep(const std::vector<FragmentCombination> &level) {
    result_.valid_combinations.insert(result_.valid_combinations.end(),
                                      level.begin(), level.end());
  }

  const Stock &stock_;
  const EngineConfig &cfg_;
  int workers_;
  int k_ = 0;
  RetroResult result_;
  std::vector<FragmentSet> neighbor_masks_;
  std::vector<std::vector<int>> neighbors_;
  // (neighbour fragment, cut bond id) per fragment.
  std::vector<std::vector<std::pair<int, int>>> incident_;
  // Screen bits of the last evaluated level's valid combinations, and of
  // the singletons.
  std::vector<PatternFingerprint> level_fps_;
  std::vector<PatternFingerprint> singleton_fps_;
  std::vector<FragmentSet> prev_members_;
  std::vector<int> all_ids_;
  std::vector<std::vector<int>> singleton_matches_;
  std::unordered_set<FragmentSet, FragmentSetHash> prev_valid_;
};

// Exact cover on the lowest uncovered index. Solutions are recorded as
// runs of block ranks in `flat`, each preceded by its length.
struct Cover {
  int k;
  std::size_t cap;
  std::span<const FragmentSet> valid;
  std::vector<std::vector<std::uint32_t>> by_lowest;  // indices into valid
  std::vector<std::uint32_t> rank;                    // index -> rank
  std::vector<std::uint32_t> path;
  std::vector<std::uint32_t> flat;
  std::vector<std::size_t> starts;
  bool truncated = false;

  // Indices below `i` are covered.
  bool solve(const FragmentSet &covered, int i) {
    while (i < k && covered.contains(i))
      ++i;
    if (i == k) {
      if (cap != 0 && starts.size() == cap) {
        truncated = true;
        return false;
      }
      starts.push_back(flat.size());
      flat.push_back(static_cast<std::uint32_t>(path.size()));
      flat.insert(flat.end(), path.begin(), path.end());
      return true;
    }
    for (const std::uint32_t b: by_lowest[i]) {
      if (valid[b].intersects(covered))
        continue;
      path.push_back(rank[b]);
      const bool more = solve(covered | valid[b], i + 1);
      path.pop_back();
      if (!more)
        return false;
    }
    return true;
  }
};

}  // namespace

std::string_view to_string(TerminationReason reason) {
  switch (reason) {
  case TerminationReason::kInitFail:
    return "init_fail";
  case TerminationReason::kNoEffective:
    return "no_effective";
  case TerminationReason::kReachedTarget:
    return "reached_target";
  case TerminationReason::kStageLimit:
    return "stage_limit";
  case TerminationReason::kSolutionCap:
    return "solution_cap";
  }
  return "unknown";
}

std::int64_t RetroResult::total_match_calls() const {
  std::int64_t n = 0;
  for (const StageStats &s: stats)
    n += s.match_calls;
  return n;
}

SolutionSet enumerate_solutions(std::span<const FragmentSet> valid, int k,
                                std::size_t cap) {
  SolutionSet out;
  if (k <= 0)
    return out;
  const auto n = static_cast<std::uint32_t>(valid.size());
  std::vector<std::uint32_t> by_rank(n);
  std::iota(by_rank.begin(), by_rank.end(), 0U);
  std::sort(by_rank.begin(), by_rank.end(),
            [&](std::uint32_t a, std::uint32_t b) { return valid[a] < valid[b]; });
  std::vector<int> sizes(n);
  for (std::uint32_t i = 0; i < n; ++i)
    sizes[i] = valid[i].size();

  Cover c { k, cap, valid, std::vector<std::vector<std::uint32_t>>(k),
            std::vector<std::uint32_t>(n), {}, {}, {} };
  for (std::uint32_t r = 0; r < n; ++r)
    c.rank[by_rank[r]] = r;
  for (const std::uint32_t i: by_rank) {
    const int low = valid[i].lowest();
    if (low >= 0 && low < k)
      c.by_lowest[low].push_back(i);
  }
  // Larger blocks first so a capped run keeps the shortest partitions.
  for (auto &list: c.by_lowest) {
    std::stable_sort(list.begin(), list.end(), [&](std::uint32_t a, std::uint32_t b) {
      return sizes[a] > sizes[b];
    });
  }
  c.solve(FragmentSet(k), 0);
  out.truncated = c.truncated;

  // Rank order is block order, so comparing rank runs orders solutions.
  std::sort(c.starts.begin(), c.starts.end(), [&](std::size_t a, std::size_t b) {
    const std::uint32_t *x = c.flat.data() + a, *y = c.flat.data() + b;
    if (*x != *y)
      return *x < *y;
    return std::lexicographical_compare(x + 1, x + 1 + *x, y + 1, y + 1 + *y);
  });
  out.solutions.reserve(c.starts.size());
  for (const std::size_t at: c.starts) {
    Solution sol;
    sol.blocks.reserve(c.flat[at]);
    for (std::uint32_t j = 1; j <= c.flat[at]; ++j)
      sol.blocks.push_back(valid[by_rank[c.flat[at + j]]]);
    out.solutions.push_back(std::move(sol));
  }
  return out;
}

RetroResult run_decomposition(FragmentDecomposition decomposition,
                              const Stock &stock, const EngineConfig &config) {
  return Search(std::move(decomposition), stock, config).run();
}

RetroResult run(const Molecule &target, const Stock &stock,
                const EngineConfig &config) {
  const RuleSet rules =
    config.rules ? *config.rules : default_rule_set(config.mode);
  return run_decomposition(fragment(target, rules), stock, config);
}

RetroResult run_without_screening(const Molecule &target, const Stock &stock,
                                  EngineConfig config) {
  config.screening = false;
  return run(target, stock, config);
}

}  // namespace fragretro
