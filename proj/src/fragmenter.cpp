//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#include "fragretro/fragmenter.h"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <utility>

#include "fragretro/errors.h"

namespace fragretro {
namespace {

bool is_saturated(const Molecule &m, int atom) {
  if (m.atom(atom).aromatic)
    return false;
  for (const Neighbor &nb: m.neighbors(atom)) {
    if (m.bond(nb.bond).order != BondOrder::kSingle)
      return false;
  }
  return true;
}

bool is_acyl(const Molecule &m, int atom) {
  const int z = m.atom(atom).element;
  if (z != 6 && z != 15 && z != 16)
    return false;
  for (const Neighbor &nb: m.neighbors(atom)) {
    if (m.atom(nb.atom).element == 8
        && m.bond(nb.bond).order == BondOrder::kDouble)
      return true;
  }
  return false;
}

int count_neighbors(const Molecule &m, int atom, int partner,
                    const NeighborRequirement &req) {
  int n = 0;
  for (const Neighbor &nb: m.neighbors(atom)) {
    if (nb.atom == partner || m.atom(nb.atom).is_attachment())
      continue;
    if (req.element != kWildcard && m.atom(nb.atom).element != req.element)
      continue;
    if (req.order && m.bond(nb.bond).order != *req.order)
      continue;
    ++n;
  }
  return n;
}

struct UnionFind {
  explicit UnionFind(int n): parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b)
      parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<int> parent;
};

bool chain_carbon(const Molecule &m, int atom) {
  const Atom &a = m.atom(atom);
  return a.element == 6 && !a.aromatic && !m.atom_in_ring(atom)
         && is_saturated(m, atom);
}

void long_chain_cuts(const Molecule &m, const std::vector<char> &cut,
                     std::vector<std::pair<int, std::string>> &out) {
  const int n = m.num_atoms();
  // Chain graph: sp3 acyclic carbons over uncut single bonds. Branch points
  // end chains, so every remaining component is a simple path.
  std::vector<std::vector<Neighbor>> chain(n);
  for (int b = 0; b < m.num_bonds(); ++b) {
    const Bond &bond = m.bond(b);
    if (cut[b] || !chain_carbon(m, bond.begin) || !chain_carbon(m, bond.end))
      continue;
    chain[bond.begin].push_back({ bond.end, b });
    chain[bond.end].push_back({ bond.begin, b });
  }
  std::vector<char> eligible(n, 0);
  for (int i = 0; i < n; ++i)
    eligible[i] = chain_carbon(m, i) && chain[i].size() <= 2;

  auto chain_degree = [&](int i) {
    int d = 0;
    for (const Neighbor &nb: chain[i])
      d += eligible[nb.atom];
    return d;
  };

  std::vector<char> seen(n, 0);
  for (int start = 0; start < n; ++start) {
    if (!eligible[start] || seen[start] || chain_degree(start) > 1)
      continue;
    // Walk from the lower-index end of the path.
    std::vector<int> bonds;
    int prev = -1, cur = start;
    seen[cur] = 1;
    int length = 1;
    while (true) {
      int next = -1, via = -1;
      for (const Neighbor &nb: chain[cur]) {
        if (nb.atom != prev && eligible[nb.atom]) {
          next = nb.atom;
          via = nb.bond;
        }
      }
      if (next < 0)
        break;
      bonds.push_back(via);
      prev = cur;
      cur = next;
      seen[cur] = 1;
      ++length;
    }
    if (length < 7)
      continue;
    for (std::size_t j = 3; j < bonds.size(); j += 4)
      out.emplace_back(bonds[j], "rb_chain");
  }
}

void ring_bridge_cuts(const Molecule &m,
                      std::vector<std::pair<int, std::string>> &out) {
  for (int i = 0; i < m.num_atoms(); ++i) {
    if (!chain_carbon(m, i))
      continue;
    std::vector<int> ring_bonds;
    for (const Neighbor &nb: m.neighbors(i)) {
      if (m.atom_in_ring(nb.atom))
        ring_bonds.push_back(nb.bond);
    }
    if (ring_bonds.size() != 2)
      continue;
    for (int b: ring_bonds)
      out.emplace_back(b, "rb_bridge");
  }
}

}  // namespace

bool AtomEnvironment::matches(const Molecule &m, int atom, int partner) const {
  const Atom &a = m.atom(atom);
  if (a.is_attachment())
    return false;
  if (!elements.empty()
      && std::find(elements.begin(), elements.end(), a.element)
           == elements.end())
    return false;
  if (aromatic && a.aromatic != *aromatic)
    return false;
  if (in_ring && m.atom_in_ring(atom) != *in_ring)
    return false;
  const int degree = m.degree(atom);
  if (degree < min_degree || degree > max_degree)
    return false;
  if (saturated && is_saturated(m, atom) != *saturated)
    return false;
  if (acyl_neighbor) {
    bool found = false;
    for (const Neighbor &nb: m.neighbors(atom)) {
      if (nb.atom != partner && is_acyl(m, nb.atom)) {
        found = true;
        break;
      }
    }
    if (found != *acyl_neighbor)
      return false;
  }
  for (const NeighborRequirement &req: required) {
    if (count_neighbors(m, atom, partner, req) < req.count)
      return false;
  }
  for (const NeighborRequirement &req: forbidden) {
    if (count_neighbors(m, atom, partner, req) > 0)
      return false;
  }
  return true;
}

bool CleavageRule::matches(const Molecule &m, int bond) const {
  const Bond &b = m.bond(bond);
  if (b.order != order)
    return false;
  if (acyclic_only && m.bond_in_ring(bond))
    return false;
  return (left.matches(m, b.begin, b.end) && right.matches(m, b.end, b.begin))
         || (left.matches(m, b.end, b.begin)
             && right.matches(m, b.begin, b.end));
}

std::vector<CleavageSite> find_cleavage_bonds(const Molecule &m,
                                              const RuleSet &rules) {
  std::vector<char> cut(m.num_bonds(), 0);
  std::vector<std::string> label(m.num_bonds());
  for (int b = 0; b < m.num_bonds(); ++b) {
    for (const CleavageRule &rule: rules.rules) {
      if (rule.matches(m, b)) {
        cut[b] = 1;
        label[b] = rule.rule_id;
        break;
      }
    }
  }
  for (StructuralPass pass: rules.passes) {
    std::vector<std::pair<int, std::string>> extra;
    if (pass == StructuralPass::kLongChain)
      long_chain_cuts(m, cut, extra);
    else
      ring_bridge_cuts(m, extra);
    for (auto &[b, id]: extra) {
      if (!cut[b]) {
        cut[b] = 1;
        label[b] = std::move(id);
      }
    }
  }
  std::vector<CleavageSite> sites;
  for (int b = 0; b < m.num_bonds(); ++b) {
    if (cut[b])
      sites.push_back({ b, label[b] });
  }
  return sites;
}

std::vector<std::vector<int>> FragmentDecomposition::neighbor_lists() const {
  std::vector<std::vector<int>> out(fragments.size());
  for (const FragmentEdge &e: adjacency) {
    out[e.a].push_back(e.b);
    out[e.b].push_back(e.a);
  }
  for (auto &list: out) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return out;
}

bool FragmentDecomposition::is_connected(const FragmentSet &members) const {
  const int count = members.size();
  if (count == 0)
    return false;
  // Union-find over member fragments; each merge removes one component.
  std::vector<int> parent(fragments.size());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  int components = count;
  for (const FragmentEdge &e: adjacency) {
    if (!members.contains(e.a) || !members.contains(e.b))
      continue;
    const int ra = find(e.a), rb = find(e.b);
    if (ra != rb) {
      parent[ra] = rb;
      --components;
    }
  }
  return components == 1;
}

FragmentDecomposition fragment(const Molecule &m, const RuleSet &rules) {
  if (m.has_attachments())
    throw GraphError("cannot fragment a molecule with attachment atoms");

  FragmentDecomposition d;
  d.target = m;
  const int n = m.num_atoms();

  std::vector<CleavageSite> sites = find_cleavage_bonds(m, rules);
  std::vector<char> cut(m.num_bonds(), 0);
  for (const CleavageSite &s: sites)
    cut[s.bond] = 1;

  UnionFind uf(n);
  for (int b = 0; b < m.num_bonds(); ++b) {
    if (!cut[b])
      uf.unite(m.bond(b).begin, m.bond(b).end);
  }
  // A cut inside a ring that does not separate anything is undone.
  std::erase_if(sites, [&](const CleavageSite &s) {
    const Bond &b = m.bond(s.bond);
    if (uf.find(b.begin) != uf.find(b.end))
      return false;
    cut[s.bond] = 0;
    return true;
  });

  std::vector<int> component_of(n, -1);
  std::vector<int> roots;
  for (int i = 0; i < n; ++i) {
    const int r = uf.find(i);
    auto it = std::find(roots.begin(), roots.end(), r);
    if (it == roots.end()) {
      roots.push_back(r);
      component_of[i] = static_cast<int>(roots.size()) - 1;
    } else {
      component_of[i] = static_cast<int>(it - roots.begin());
    }
  }
  const int k = static_cast<int>(roots.size());

  std::vector<MoleculeBuilder> builders(k);
  std::vector<std::vector<int>> origin(k);
  std::vector<int> local(n, -1);
  for (int i = 0; i < n; ++i) {
    const int c = component_of[i];
    local[i] = builders[c].add_atom(m.atom(i));
    origin[c].push_back(i);
  }
  for (int b = 0; b < m.num_bonds(); ++b) {
    if (cut[b])
      continue;
    const Bond &bond = m.bond(b);
    builders[component_of[bond.begin]].add_bond(local[bond.begin],
                                                local[bond.end], bond.order);
  }
  for (const CleavageSite &s: sites) {
    const Bond &bond = m.bond(s.bond);
    for (int end: { bond.begin, bond.end }) {
      const int c = component_of[end];
      const int att = builders[c].add_atom(Atom::attachment(s.bond));
      builders[c].add_bond(local[end], att, bond.order);
      origin[c].push_back(-1);
    }
    const int ca = component_of[bond.begin], cb = component_of[bond.end];
    d.adjacency.push_back({ std::min(ca, cb), std::max(ca, cb), s.bond });
    d.rule_per_bond.emplace(s.bond, s.rule_id);
  }
  for (int c = 0; c < k; ++c) {
    Molecule frag = std::move(builders[c]).build();
    d.fragments.push_back(std::move(frag));
  }
  d.origin = std::move(origin);
  return d;
}

FragmentDecomposition fragment(const Molecule &m, FragmentMode mode) {
  return fragment(m, default_rule_set(mode));
}

Molecule combination_pattern(const FragmentDecomposition &d,
                             const FragmentSet &members) {
  std::vector<std::pair<int, int>> joined;
  return combination_pattern(d, members, joined);
}

Molecule combination_pattern(const FragmentDecomposition &d,
                             const FragmentSet &members,
                             std::vector<std::pair<int, int>> &joined) {
  joined.clear();
  if (members.empty() || !d.is_connected(members))
    throw DisconnectedMembers("fragment combination is empty or disconnected");
  const std::vector<int> list = members.members();
  if (list.size() == 1)
    return d.fragments[list.front()];

  std::vector<int> internal;
  for (const FragmentEdge &e: d.adjacency) {
    if (members.contains(e.a) && members.contains(e.b))
      internal.push_back(e.bond_id);
  }
  std::sort(internal.begin(), internal.end());
  auto slot_of = [&](int id) {
    const auto it = std::lower_bound(internal.begin(), internal.end(), id);
    return it != internal.end() && *it == id
             ? static_cast<int>(it - internal.begin())
             : -1;
  };

  MoleculeBuilder builder;
  struct Anchor {
    int atom = -1;
    int other = -1;
    BondOrder order = BondOrder::kSingle;
  };
  std::vector<Anchor> anchors(internal.size());
  std::vector<int> index;
  for (int f: list) {
    const Molecule &frag = d.fragments[f];
    index.assign(frag.num_atoms(), -1);
    for (int i = 0; i < frag.num_atoms(); ++i) {
      const Atom &a = frag.atom(i);
      if (a.is_attachment() && slot_of(*a.attachment_bond_id) >= 0)
        continue;
      index[i] = builder.add_atom(a);
    }
    for (const Bond &b: frag.bonds()) {
      if (index[b.begin] >= 0 && index[b.end] >= 0) {
        builder.add_bond(index[b.begin], index[b.end], b.order);
        continue;
      }
      const int att = index[b.begin] < 0 ? b.begin : b.end;
      Anchor &slot = anchors[slot_of(*frag.atom(att).attachment_bond_id)];
      if (slot.atom < 0) {
        slot.atom = index[b.other(att)];
        slot.order = b.order;
      } else {
        slot.other = index[b.other(att)];
      }
    }
  }
  for (std::size_t k = 0; k < internal.size(); ++k) {
    const int bond = builder.add_bond(anchors[k].atom, anchors[k].other, anchors[k].order);
    joined.emplace_back(internal[k], bond);
  }
  return std::move(builder).build();
}

}  // namespace fragretro
