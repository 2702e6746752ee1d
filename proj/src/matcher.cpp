//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#include "fragretro/matcher.h"

#include <algorithm>
#include <functional>
#include <span>
#include <tuple>

#include "fragretro/errors.h"

namespace fragretro {
namespace {

struct Scratch {
  std::vector<int> image;      // query -> target
  std::vector<int> preimage;   // target -> query
  std::vector<int> order;      // search position -> query atom
  std::vector<int> position;   // query atom -> search position
  std::vector<int> parent;     // search position -> parent query atom or -1
  std::vector<int> back_count;
  std::vector<int> cursor;
  std::vector<std::int64_t> class_count;
  std::vector<std::tuple<std::int64_t, int, int>> seeds;
  std::vector<std::tuple<std::int64_t, int, int>> heap;
};

Scratch &scratch() {
  thread_local Scratch s;
  return s;
}

}  // namespace

SubstructureQuery::SubstructureQuery(const Molecule &query, Mode mode)
  : mode_(mode) {
  std::vector<int> index(query.num_atoms(), -1);
  for (int i = 0; i < query.num_atoms(); ++i) {
    const Atom &a = query.atom(i);
    if (mode_ == Mode::kStrict && a.is_attachment())
      continue;
    index[i] = static_cast<int>(atoms_.size());
    PatternAtomConstraint c;
    c.element = a.element;
    c.aromatic = a.aromatic;
    c.formal_charge = a.formal_charge;
    c.hydrogens = a.hydrogens;
    c.in_ring = query.atom_in_ring(i);
    atoms_.push_back(c);
  }
  if (atoms_.empty()) {
    if (mode_ == Mode::kStrict)
      throw QueryHasNoInternalAtoms("query has no internal atoms");
    return;
  }
  const int n = size();
  offsets_.assign(n + 1, 0);
  for (const Bond &b: query.bonds()) {
    const int u = index[b.begin], v = index[b.end];
    if (u >= 0 && v >= 0) {
      ++offsets_[u + 1];
      ++offsets_[v + 1];
    } else if (u >= 0) {
      ++atoms_[u].attachment_slots;
    } else if (v >= 0) {
      ++atoms_[v].attachment_slots;
    }
  }
  for (int i = 0; i < n; ++i) {
    atoms_[i].required_internal_degree = offsets_[i + 1];
    offsets_[i + 1] += offsets_[i];
  }
  adjacency_.resize(offsets_[n]);
  std::vector<int> fill(offsets_.begin(), offsets_.end() - 1);
  for (const Bond &b: query.bonds()) {
    const int u = index[b.begin], v = index[b.end];
    if (u >= 0 && v >= 0) {
      adjacency_[fill[u]++] = { v, b.order };
      adjacency_[fill[v]++] = { u, b.order };
    }
  }

  // Atoms with identical labels share one candidate count per target.
  auto pack = [&](const PatternAtomConstraint &c) {
    std::uint64_t k = static_cast<std::uint8_t>(c.element);
    k = k << 1 | c.aromatic;
    k = k << 8 | static_cast<std::uint8_t>(c.formal_charge);
    k = k << 8 | static_cast<std::uint8_t>(mode_ == Mode::kExact ? c.hydrogens : 0);
    k = k << 1 | c.in_ring;
    k = k << 8 | static_cast<std::uint8_t>(c.required_internal_degree);
    k = k << 8 | static_cast<std::uint8_t>(c.attachment_slots);
    return k;
  };
  std::vector<std::pair<std::uint64_t, int>> keyed(n);
  for (int i = 0; i < n; ++i)
    keyed[i] = { pack(atoms_[i]), i };
  std::sort(keyed.begin(), keyed.end());
  label_class_.resize(n);
  for (int i = 0; i < n; ++i) {
    if (i > 0 && keyed[i].first != keyed[i - 1].first)
      ++num_classes_;
    label_class_[keyed[i].second] = num_classes_;
  }
  ++num_classes_;
}

bool SubstructureQuery::compatible(int q, const Molecule &target,
                                   int t) const {
  const PatternAtomConstraint &c = atoms_[q];
  const Atom &a = target.atom(t);
  if (a.element != c.element || a.aromatic != c.aromatic
      || a.formal_charge != c.formal_charge)
    return false;
  if (c.in_ring && !target.atom_in_ring(t))
    return false;
  const int extra = target.degree(t) - c.required_internal_degree;
  if (mode_ == Mode::kExact)
    return extra == 0 && a.hydrogens == c.hydrogens;
  return extra >= 0 && extra <= c.attachment_slots;
}

std::int64_t SubstructureQuery::search(const Molecule &target,
                                       std::int64_t limit) const {
  const int n = size();
  const int nt = target.num_atoms();
  if (n == 0)
    return limit > 0 ? 1 : 0;
  if (n > nt || limit <= 0)
    return 0;

  Scratch &s = scratch();
  s.class_count.assign(num_classes_, -1);
  for (int q = 0; q < n; ++q) {
    const int cls = label_class_[q];
    if (s.class_count[cls] >= 0)
      continue;
    std::int64_t count = 0;
    for (int t = 0; t < nt; ++t)
      count += compatible(q, target, t);
    if (count == 0)
      return 0;
    s.class_count[cls] = count;
  }

  // Greedy order: rarest atom first, then the rarest atom adjacent to the
  // ones already placed.
  s.order.clear();
  s.position.assign(n, -1);
  s.parent.assign(n, -1);
  s.back_count.assign(n, 0);
  // Heap keys: (candidate count, -internal degree, atom).
  using Key = std::tuple<std::int64_t, int, int>;
  auto key = [&](int q) {
    return Key { s.class_count[label_class_[q]],
                 -static_cast<int>(internal(q).size()), q };
  };
  std::vector<Key> &frontier = s.heap;
  frontier.clear();
  std::vector<Key> &seeds = s.seeds;
  seeds.clear();
  for (int q = 0; q < n; ++q)
    seeds.push_back(key(q));
  std::sort(seeds.begin(), seeds.end());
  std::size_t next_seed = 0;
  while (static_cast<int>(s.order.size()) < n) {
    int best = -1;
    while (!frontier.empty()) {
      std::pop_heap(frontier.begin(), frontier.end(), std::greater<> {});
      const int q = std::get<2>(frontier.back());
      frontier.pop_back();
      if (s.position[q] < 0) {
        best = q;
        break;
      }
    }
    while (best < 0) {
      const int q = std::get<2>(seeds[next_seed++]);
      if (s.position[q] < 0)
        best = q;
    }
    const int pos = static_cast<int>(s.order.size());
    s.position[best] = pos;
    s.order.push_back(best);
    int parent = -1, backs = 0;
    for (const auto &[nb, order]: internal(best)) {
      if (s.position[nb] >= 0) {
        ++backs;
        if (parent < 0 || s.position[nb] < s.position[parent])
          parent = nb;
      } else {
        frontier.push_back(key(nb));
        std::push_heap(frontier.begin(), frontier.end(), std::greater<> {});
      }
    }
    s.parent[pos] = parent;
    s.back_count[pos] = backs;
  }

  s.image.assign(n, -1);
  s.preimage.assign(nt, -1);
  s.cursor.assign(n, 0);

  auto feasible = [&](int pos, int q, int t) {
    if (s.preimage[t] >= 0 || !compatible(q, target, t))
      return false;
    int mapped = 0;
    for (const Neighbor &nb: target.neighbors(t)) {
      const int qq = s.preimage[nb.atom];
      if (qq < 0)
        continue;
      const BondOrder order = target.bond(nb.bond).order;
      const auto adj = internal(q);
      if (std::find(adj.begin(), adj.end(), std::pair { qq, order })
          == adj.end())
        return false;
      ++mapped;
    }
    return mapped == s.back_count[pos];
  };

  std::int64_t found = 0;
  int pos = 0;
  s.cursor[0] = 0;
  while (pos >= 0) {
    const int q = s.order[pos];
    if (s.image[q] >= 0) {
      s.preimage[s.image[q]] = -1;
      s.image[q] = -1;
    }
    const int parent = s.parent[pos];
    const int limit_cursor =
      parent < 0 ? nt : target.degree(s.image[parent]);
    int chosen = -1;
    while (s.cursor[pos] < limit_cursor) {
      const int c = s.cursor[pos]++;
      const int t =
        parent < 0 ? c : target.neighbors(s.image[parent])[c].atom;
      if (feasible(pos, q, t)) {
        chosen = t;
        break;
      }
    }
    if (chosen < 0) {
      --pos;
      continue;
    }
    s.image[q] = chosen;
    s.preimage[chosen] = q;
    if (pos + 1 == n) {
      if (++found >= limit)
        break;
      continue;
    }
    ++pos;
    s.cursor[pos] = 0;
  }
  return found;
}

bool SubstructureQuery::matches(const Molecule &target) const {
  return search(target, 1) > 0;
}

std::int64_t SubstructureQuery::count(const Molecule &target,
                                      std::int64_t limit) const {
  return search(target, limit);
}

bool match_substructure(const Molecule &query, const Molecule &target) {
  return SubstructureQuery(query).matches(target);
}

bool is_isomorphic(const Molecule &a, const Molecule &b) {
  if (a.num_atoms() != b.num_atoms() || a.num_bonds() != b.num_bonds())
    return false;
  return SubstructureQuery(a, SubstructureQuery::Mode::kExact).matches(b);
}

std::int64_t count_embeddings(const Molecule &query, const Molecule &target,
                              std::int64_t limit) {
  return SubstructureQuery(query).count(target, limit);
}

}  // namespace fragretro
