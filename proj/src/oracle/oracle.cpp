//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#include "fragretro/oracle.h"

#include <algorithm>
#include <functional>

#include "fragretro/errors.h"

namespace fragretro::oracle {
namespace {

int bond_order_between(const Molecule &m, int a, int b) {
  for (const Bond &bond: m.bonds()) {
    if ((bond.begin == a && bond.end == b) || (bond.begin == b && bond.end == a))
      return static_cast<int>(bond.order);
  }
  return 0;
}

class NaiveMatcher {
 public:
  NaiveMatcher(const Molecule &q, const Molecule &t, std::int64_t limit)
    : q_(q), t_(t), limit_(limit) {
    for (int i = 0; i < q.num_atoms(); ++i) {
      if (!q.atom(i).is_attachment())
        internal_.push_back(i);
    }
    if (internal_.empty())
      throw QueryHasNoInternalAtoms("query has no internal atoms");
    internal_degree_.assign(q.num_atoms(), 0);
    slots_.assign(q.num_atoms(), 0);
    for (const Bond &b: q.bonds()) {
      const bool ia = q.atom(b.begin).is_attachment();
      const bool ib = q.atom(b.end).is_attachment();
      if (!ia && !ib) {
        ++internal_degree_[b.begin];
        ++internal_degree_[b.end];
      } else if (!ia) {
        ++slots_[b.begin];
      } else if (!ib) {
        ++slots_[b.end];
      }
    }
    image_.assign(internal_.size(), -1);
    used_.assign(t.num_atoms(), 0);
  }

  std::int64_t run() {
    assign(0);
    return found_;
  }

 private:
  bool ok(std::size_t depth, int t) const {
    const int q = internal_[depth];
    const Atom &qa = q_.atom(q);
    const Atom &ta = t_.atom(t);
    if (qa.element != ta.element || qa.aromatic != ta.aromatic
        || qa.formal_charge != ta.formal_charge)
      return false;
    if (q_.atom_in_ring(q) && !t_.atom_in_ring(t))
      return false;
    const int extra = t_.degree(t) - internal_degree_[q];
    if (extra < 0 || extra > slots_[q])
      return false;
    for (std::size_t k = 0; k < depth; ++k) {
      if (bond_order_between(q_, q, internal_[k])
          != bond_order_between(t_, t, image_[k]))
        return false;
    }
    return true;
  }

  void assign(std::size_t depth) {
    if (found_ >= limit_)
      return;
    if (depth == internal_.size()) {
      ++found_;
      return;
    }
    for (int t = 0; t < t_.num_atoms(); ++t) {
      if (used_[t] || !ok(depth, t))
        continue;
      used_[t] = 1;
      image_[depth] = t;
      assign(depth + 1);
      used_[t] = 0;
      image_[depth] = -1;
      if (found_ >= limit_)
        return;
    }
  }

  const Molecule &q_;
  const Molecule &t_;
  std::int64_t limit_;
  std::vector<int> internal_;
  std::vector<int> internal_degree_;
  std::vector<int> slots_;
  std::vector<int> image_;
  std::vector<char> used_;
  std::int64_t found_ = 0;
};

bool mask_connected(std::uint32_t mask, const std::vector<std::uint32_t> &nbr) {
  if (mask == 0)
    return false;
  std::uint32_t reached = mask & (~mask + 1);
  while (true) {
    std::uint32_t grow = reached;
    for (int i = 0; i < 32; ++i) {
      if (reached >> i & 1U)
        grow |= nbr[i] & mask;
    }
    if (grow == reached)
      break;
    reached = grow;
  }
  return reached == mask;
}

FragmentSet from_mask(int k, std::uint32_t mask) {
  FragmentSet s(k);
  for (int i = 0; i < k; ++i) {
    if (mask >> i & 1U)
      s.insert(i);
  }
  return s;
}

}  // namespace

bool naive_match(const Molecule &query, const Molecule &target) {
  return NaiveMatcher(query, target, 1).run() > 0;
}

std::int64_t naive_count(const Molecule &query, const Molecule &target,
                         std::int64_t limit) {
  return NaiveMatcher(query, target, limit).run();
}

std::vector<FragmentSet> all_connected_subsets(
  int k, std::span<const FragmentEdge> edges) {
  if (k > 20)
    throw TooManyFragments("connected subset enumeration limited to 20 nodes");
  std::vector<std::uint32_t> nbr(32, 0);
  for (const FragmentEdge &e: edges) {
    nbr[e.a] |= 1U << e.b;
    nbr[e.b] |= 1U << e.a;
  }
  std::vector<FragmentSet> out;
  for (std::uint32_t mask = 1; mask < (1U << k); ++mask) {
    if (mask_connected(mask, nbr))
      out.push_back(from_mask(k, mask));
  }
  std::sort(out.begin(), out.end(), [](const FragmentSet &a, const FragmentSet &b) {
    if (a.size() != b.size())
      return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<std::vector<FragmentSet>> all_partitions(int k) {
  // Restricted growth strings.
  std::vector<std::vector<FragmentSet>> out;
  std::vector<int> label(k, 0);
  std::function<void(int, int)> rec = [&](int i, int used) {
    if (i == k) {
      std::vector<FragmentSet> blocks(used, FragmentSet(k));
      for (int j = 0; j < k; ++j)
        blocks[label[j]].insert(j);
      out.push_back(std::move(blocks));
      return;
    }
    for (int b = 0; b <= used && b < k; ++b) {
      label[i] = b;
      rec(i + 1, std::max(used, b + 1));
    }
  };
  if (k > 0)
    rec(0, 0);
  return out;
}

RetroResult brute_force_decomposition(FragmentDecomposition d,
                                      const Stock &stock) {
  const int k = d.size();
  if (k > kMaxFragments)
    throw TooManyFragments("oracle handles at most "
                           + std::to_string(kMaxFragments) + " fragments");
  RetroResult r;
  const std::vector<FragmentSet> subsets = all_connected_subsets(k, d.adjacency);
  std::vector<FragmentCombination> valid;
  for (const FragmentSet &s: subsets) {
    FragmentCombination c;
    c.members = s;
    c.stage = s.size();
    c.pattern = combination_pattern(d, s);
    for (const StockEntry &bb: stock.entries()) {
      if (naive_match(c.pattern, bb.molecule))
        c.matched_bbs.push_back(bb.id);
    }
    c.status = c.matched_bbs.empty() ? CombinationStatus::kInvalid
                                     : CombinationStatus::kValid;
    if (c.status == CombinationStatus::kValid)
      valid.push_back(std::move(c));
  }
  r.combinations_evaluated = static_cast<std::int64_t>(subsets.size());

  int valid_singletons = 0;
  for (const FragmentCombination &c: valid)
    valid_singletons += c.stage == 1;
  const bool init_ok = valid_singletons == k;
  if (!init_ok) {
    std::erase_if(valid, [](const FragmentCombination &c) { return c.stage != 1; });
    r.termination = TerminationReason::kInitFail;
  } else {
    for (const std::vector<FragmentSet> &p: all_partitions(k)) {
      const bool ok = std::all_of(p.begin(), p.end(), [&](const FragmentSet &b) {
        return std::any_of(valid.begin(), valid.end(),
                           [&](const FragmentCombination &c) { return c.members == b; });
      });
      if (ok)
        r.solutions.push_back({ p });
    }
    std::sort(r.solutions.begin(), r.solutions.end());
  }
  r.valid_combinations = std::move(valid);
  r.solved = !r.solutions.empty();
  r.decomposition = std::move(d);
  return r;
}

RetroResult brute_force_retro(const Molecule &target, const Stock &stock,
                              FragmentMode mode) {
  return brute_force_decomposition(fragment(target, mode), stock);
}

}  // namespace fragretro::oracle
