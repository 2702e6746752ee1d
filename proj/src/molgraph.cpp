//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#include "fragretro/molgraph.h"

#include <algorithm>
#include <string>
#include <unordered_map>
#include <utility>

#include "fragretro/errors.h"

namespace fragretro {

int valence_contribution(BondOrder order) {
  switch (order) {
  case BondOrder::kSingle:
  case BondOrder::kAromatic:
    return 1;
  case BondOrder::kDouble:
    return 2;
  case BondOrder::kTriple:
    return 3;
  }
  return 1;
}

char bond_symbol(BondOrder order) {
  switch (order) {
  case BondOrder::kSingle:
    return '-';
  case BondOrder::kDouble:
    return '=';
  case BondOrder::kTriple:
    return '#';
  case BondOrder::kAromatic:
    return ':';
  }
  return '-';
}

std::optional<int> Molecule::find_bond(int a, int b) const {
  for (const Neighbor &nb: neighbors(a)) {
    if (nb.atom == b)
      return nb.bond;
  }
  return std::nullopt;
}

std::vector<int> Molecule::attachment_atoms() const {
  std::vector<int> out;
  for (int i = 0; i < num_atoms(); ++i) {
    if (atoms_[i].is_attachment())
      out.push_back(i);
  }
  return out;
}

int MoleculeBuilder::add_atom(const Atom &atom, bool implicit_hydrogens) {
  atoms_.push_back(atom);
  implicit_h_.push_back(implicit_hydrogens);
  return static_cast<int>(atoms_.size()) - 1;
}

int MoleculeBuilder::add_bond(int a, int b, BondOrder order) {
  const int n = num_atoms();
  if (a < 0 || b < 0 || a >= n || b >= n)
    throw GraphError("bond endpoint out of range");
  if (a == b)
    throw GraphError("self bond on atom " + std::to_string(a));
  bonds_.push_back({ a, b, order });
  return static_cast<int>(bonds_.size()) - 1;
}

int implicit_hydrogens(int element, bool aromatic, int bond_valence) {
  const std::span<const int> valences = default_valences(element);
  if (valences.empty())
    return 0;
  if (bond_valence > valences.back()) {
    throw ValenceError(std::string(element_symbol(element)) + " with valence "
                       + std::to_string(bond_valence) + " exceeds "
                       + std::to_string(valences.back()));
  }
  if (aromatic)
    return std::max(0, valences.front() - bond_valence - 1);
  for (int v: valences) {
    if (v >= bond_valence)
      return v - bond_valence;
  }
  return 0;
}

int bond_valence(const Molecule &m, int atom) {
  int sum = 0;
  for (const Neighbor &nb: m.neighbors(atom))
    sum += valence_contribution(m.bond(nb.bond).order);
  return sum;
}

namespace {

// Marks bridges with an iterative lowlink DFS; every non-bridge lies on a
// cycle.
std::vector<std::uint8_t> find_ring_bonds(const Molecule &m) {
  const int n = m.num_atoms();
  std::vector<std::uint8_t> ring(m.num_bonds(), 1);
  std::vector<int> disc(n, -1), low(n, 0);
  struct Frame {
    int atom;
    int parent_bond;
    std::size_t next;
  };
  std::vector<Frame> stack;
  int time = 0;
  for (int root = 0; root < n; ++root) {
    if (disc[root] >= 0)
      continue;
    disc[root] = low[root] = time++;
    stack.push_back({ root, -1, 0 });
    while (!stack.empty()) {
      Frame &f = stack.back();
      const auto nbrs = m.neighbors(f.atom);
      if (f.next < nbrs.size()) {
        const Neighbor nb = nbrs[f.next++];
        if (nb.bond == f.parent_bond)
          continue;
        if (disc[nb.atom] < 0) {
          disc[nb.atom] = low[nb.atom] = time++;
          stack.push_back({ nb.atom, nb.bond, 0 });
        } else {
          low[f.atom] = std::min(low[f.atom], disc[nb.atom]);
        }
        continue;
      }
      const Frame done = f;
      stack.pop_back();
      if (!stack.empty()) {
        Frame &parent = stack.back();
        low[parent.atom] = std::min(low[parent.atom], low[done.atom]);
        if (low[done.atom] > disc[parent.atom])
          ring[done.parent_bond] = 0;
      }
    }
  }
  return ring;
}

int count_components(const Molecule &m) {
  const int n = m.num_atoms();
  std::vector<char> seen(n, 0);
  std::vector<int> queue;
  int components = 0;
  for (int s = 0; s < n; ++s) {
    if (seen[s])
      continue;
    ++components;
    seen[s] = 1;
    queue.assign(1, s);
    while (!queue.empty()) {
      const int a = queue.back();
      queue.pop_back();
      for (const Neighbor &nb: m.neighbors(a)) {
        if (!seen[nb.atom]) {
          seen[nb.atom] = 1;
          queue.push_back(nb.atom);
        }
      }
    }
  }
  return components;
}

void build_adjacency(const std::vector<Bond> &bonds, int n,
                     std::vector<int> &offsets,
                     std::vector<Neighbor> &adjacency) {
  offsets.assign(n + 1, 0);
  for (const Bond &b: bonds) {
    ++offsets[b.begin + 1];
    ++offsets[b.end + 1];
  }
  for (int i = 0; i < n; ++i)
    offsets[i + 1] += offsets[i];
  adjacency.resize(offsets[n]);
  std::vector<int> fill(offsets.begin(), offsets.end() - 1);
  for (int i = 0; i < static_cast<int>(bonds.size()); ++i) {
    adjacency[fill[bonds[i].begin]++] = { bonds[i].end, i };
    adjacency[fill[bonds[i].end]++] = { bonds[i].begin, i };
  }
}

}  // namespace

Molecule MoleculeBuilder::build() && {
  std::vector<std::pair<int, int>> ends;
  ends.reserve(bonds_.size());
  for (const Bond &bond: bonds_)
    ends.emplace_back(std::min(bond.begin, bond.end), std::max(bond.begin, bond.end));
  std::sort(ends.begin(), ends.end());
  const auto dup = std::adjacent_find(ends.begin(), ends.end());
  if (dup != ends.end())
    throw GraphError("parallel bond between atoms " + std::to_string(dup->first)
                     + " and " + std::to_string(dup->second));

  Molecule m;
  const int n = num_atoms();
  m.atoms_ = std::move(atoms_);
  m.bonds_ = std::move(bonds_);
  build_adjacency(m.bonds_, n, m.offsets_, m.adjacency_);
  m.ring_bond_ = find_ring_bonds(m);

  if (demote_) {
    for (int b: implicit_aromatic_) {
      if (!m.ring_bond_[b])
        m.bonds_[b].order = BondOrder::kSingle;
    }
  }

  m.ring_atom_.assign(n, 0);
  for (int b = 0; b < m.num_bonds(); ++b) {
    if (m.ring_bond_[b]) {
      m.ring_atom_[m.bonds_[b].begin] = 1;
      m.ring_atom_[m.bonds_[b].end] = 1;
    }
  }

  m.heavy_atoms_ = 0;
  for (int i = 0; i < n; ++i) {
    Atom &atom = m.atoms_[i];
    if (atom.formal_charge < -4 || atom.formal_charge > 4)
      throw GraphError("formal charge out of range on atom "
                       + std::to_string(i));
    if (atom.is_attachment()) {
      if (m.degree(i) != 1)
        throw GraphError("attachment atom " + std::to_string(i)
                         + " must have exactly one bond");
      atom.hydrogens = 0;
      atom.aromatic = false;
      atom.formal_charge = 0;
      continue;
    }
    atom.attachment_bond_id.reset();
    ++m.heavy_atoms_;
    const int valence = bond_valence(m, i);
    if (implicit_h_[i]) {
      atom.hydrogens = implicit_hydrogens(atom.element, atom.aromatic, valence);
      continue;
    }
    if (atom.hydrogens < 0)
      throw GraphError("negative hydrogen count on atom " + std::to_string(i));
    const std::span<const int> valences = default_valences(atom.element);
    if (atom.formal_charge == 0 && !valences.empty()
        && valence + atom.hydrogens > valences.back()) {
      throw ValenceError(std::string(atom.symbol()) + " on atom "
                         + std::to_string(i) + " has valence "
                         + std::to_string(valence + atom.hydrogens));
    }
  }
  m.component_count_ = count_components(m);
  return m;
}

Measures measures(const Molecule &m) {
  return { m.heavy_atom_count(), m.ring_count() };
}

namespace {

struct AttachmentSite {
  int attachment;
  int anchor;
  BondOrder order;
};

AttachmentSite find_site(const Molecule &m, int bond_id, const char *side) {
  std::optional<AttachmentSite> found;
  for (int i = 0; i < m.num_atoms(); ++i) {
    const Atom &a = m.atom(i);
    if (!a.is_attachment() || a.attachment_bond_id != bond_id)
      continue;
    if (found) {
      throw NoSharedBond("bond id " + std::to_string(bond_id)
                         + " appears twice on the " + side + " side");
    }
    const Neighbor nb = m.neighbors(i).front();
    found = AttachmentSite { i, nb.atom, m.bond(nb.bond).order };
  }
  if (!found) {
    throw NoSharedBond("bond id " + std::to_string(bond_id)
                       + " missing on the " + side + " side");
  }
  return *found;
}

}  // namespace

Molecule merge(const Molecule &a, const Molecule &b,
               std::span<const int> shared_bond_ids) {
  if (shared_bond_ids.empty())
    throw NoSharedBond("no shared bond ids given");

  std::vector<AttachmentSite> left, right;
  std::vector<char> drop_a(a.num_atoms(), 0), drop_b(b.num_atoms(), 0);
  for (int id: shared_bond_ids) {
    left.push_back(find_site(a, id, "left"));
    right.push_back(find_site(b, id, "right"));
    drop_a[left.back().attachment] = 1;
    drop_b[right.back().attachment] = 1;
  }

  MoleculeBuilder builder;
  std::vector<int> map_a(a.num_atoms(), -1), map_b(b.num_atoms(), -1);
  for (int i = 0; i < a.num_atoms(); ++i) {
    if (!drop_a[i])
      map_a[i] = builder.add_atom(a.atom(i));
  }
  for (int i = 0; i < b.num_atoms(); ++i) {
    if (!drop_b[i])
      map_b[i] = builder.add_atom(b.atom(i));
  }
  for (const Bond &bond: a.bonds()) {
    if (map_a[bond.begin] >= 0 && map_a[bond.end] >= 0)
      builder.add_bond(map_a[bond.begin], map_a[bond.end], bond.order);
  }
  for (const Bond &bond: b.bonds()) {
    if (map_b[bond.begin] >= 0 && map_b[bond.end] >= 0)
      builder.add_bond(map_b[bond.begin], map_b[bond.end], bond.order);
  }
  for (std::size_t k = 0; k < left.size(); ++k) {
    const int u = map_a[left[k].anchor], v = map_b[right[k].anchor];
    if (u < 0 || v < 0)
      throw NoSharedBond("attachment anchored on another attachment");
    builder.add_bond(u, v, left[k].order);
  }
  return std::move(builder).build();
}

}  // namespace fragretro
