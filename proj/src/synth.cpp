//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#include "fragretro/synth.h"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "fragretro/errors.h"

namespace fragretro::synth {
namespace {

int base_valence(int element) {
  switch (element) {
  case 6:
    return 4;
  case 7:
    return 3;
  case 8:
  case 16:
    return 2;
  default:
    return 1;
  }
}

int pick(Rng &rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

bool chance(Rng &rng, double p) {
  return std::uniform_real_distribution<double>(0, 1)(rng) < p;
}

template <class T>
const T &pick_one(Rng &rng, const std::vector<T> &v) {
  return v[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(v.size()) - 1))];
}

Atom make_atom(int element, bool aromatic = false) {
  Atom a;
  a.element = element;
  a.aromatic = aromatic;
  return a;
}

// Editable molecule with free-valence bookkeeping.
class Grower {
 public:
  int add(const Atom &a, bool implicit, bool extendable) {
    atoms_.push_back({ a, implicit, extendable, 0 });
    adj_.emplace_back();
    return static_cast<int>(atoms_.size()) - 1;
  }

  void bond(int a, int b, BondOrder order) {
    bonds_.push_back({ a, b, order });
    atoms_[a].bv += valence_contribution(order);
    atoms_[b].bv += valence_contribution(order);
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }

  int size() const { return static_cast<int>(atoms_.size()); }
  Atom &atom(int i) { return atoms_[i].atom; }

  int free_valence(int i) const {
    const GAtom &g = atoms_[i];
    if (!g.extendable)
      return 0;
    if (!g.implicit)
      return 0;
    return base_valence(g.atom.element) - g.bv - (g.atom.aromatic ? 1 : 0);
  }

  std::vector<int> extendable() const {
    std::vector<int> out;
    for (int i = 0; i < size(); ++i) {
      if (free_valence(i) >= 1)
        out.push_back(i);
    }
    return out;
  }

  bool bonded(int a, int b) const {
    return std::find(adj_[a].begin(), adj_[a].end(), b) != adj_[a].end();
  }

  std::vector<int> distances(int from) const {
    std::vector<int> dist(size(), -1);
    std::vector<int> queue { from };
    dist[from] = 0;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      for (int v: adj_[queue[h]]) {
        if (dist[v] < 0) {
          dist[v] = dist[queue[h]] + 1;
          queue.push_back(v);
        }
      }
    }
    return dist;
  }

  int ring(Rng &rng, const std::vector<int> &elements, bool aromatic) {
    const int n = static_cast<int>(elements.size());
    const int first = size();
    for (int e: elements)
      add(make_atom(e, aromatic), true, true);
    for (int i = 0; i < n; ++i)
      bond(first + i, first + (i + 1) % n,
           aromatic ? BondOrder::kAromatic : BondOrder::kSingle);
    // attach at a ring carbon
    std::vector<int> carbons;
    for (int i = 0; i < n; ++i) {
      if (elements[i] == 6)
        carbons.push_back(first + i);
    }
    return carbons.empty() ? first : pick_one(rng, carbons);
  }

  // Adds one unit and returns its attachment atom.
  int unit(Rng &rng, int max_atoms, double charged) {
    if (charged > 0 && chance(rng, charged)) {
      if (chance(rng, 0.5)) {
        Atom o = make_atom(8);
        o.formal_charge = -1;
        return add(o, false, false);
      }
      Atom n = make_atom(7);
      n.formal_charge = 1;
      n.hydrogens = 3;
      return add(n, false, false);
    }
    const int kind = max_atoms >= 6 ? pick(rng, 0, 19) : pick(rng, 0, 9);
    switch (kind) {
    case 0:
    case 1:
    case 2:
      return add(make_atom(6), true, true);
    case 3:
      return add(make_atom(7), true, true);
    case 4:
      return add(make_atom(8), true, true);
    case 5: {
      const int el = pick_one(rng, std::vector<int> { 9, 17, 35, 16 });
      return add(make_atom(el), true, el == 16);
    }
    case 6:
    case 7: {
      const int c = add(make_atom(6), true, true);
      const int o = add(make_atom(8), true, false);
      bond(c, o, BondOrder::kDouble);
      return c;
    }
    case 8: {
      const int c = add(make_atom(6), true, false);
      const int n = add(make_atom(7), true, false);
      bond(c, n, BondOrder::kTriple);
      return c;
    }
    case 9: {
      const int a = add(make_atom(6), true, true);
      const int b = add(make_atom(6), true, true);
      bond(a, b, BondOrder::kDouble);
      return a;
    }
    case 10:
    case 11:
    case 12:
      return ring(rng, { 6, 6, 6, 6, 6, 6 }, true);
    case 13:
      return ring(rng, { 6, 6, 7, 6, 6, 6 }, true);
    case 14:
      return ring(rng, { 6, 6, 16, 6, 6 }, true);
    case 15:
      return ring(rng, { 6, 6, 8, 6, 6 }, true);
    case 16:
      return ring(rng, { 6, 6, 6, 6, 6, 6 }, false);
    case 17:
      return ring(rng, { 6, 6, 6, 6, 6 }, false);
    case 18:
      return ring(rng, { 6, 6, 7, 6, 6, 6 }, false);
    default:
      return ring(rng, { 6, 6, 8, 6, 6, 7 }, false);
    }
  }

  void attach_unit(Rng &rng, int at, int max_atoms, double charged) {
    const int u = unit(rng, max_atoms, charged);
    if (at >= 0)
      bond(at, u, BondOrder::kSingle);
  }

  void grow_random(Rng &rng, int target_atoms, double charged) {
    while (size() < target_atoms) {
      const std::vector<int> ext = extendable();
      if (ext.empty())
        return;
      attach_unit(rng, pick_one(rng, ext), target_atoms - size(), charged);
    }
  }

  void close_ring(Rng &rng) {
    std::vector<int> cand;
    for (int i = 0; i < size(); ++i) {
      if (!atoms_[i].atom.aromatic && free_valence(i) >= 1)
        cand.push_back(i);
    }
    std::shuffle(cand.begin(), cand.end(), rng);
    for (int a: cand) {
      const std::vector<int> dist = distances(a);
      for (int b: cand) {
        if (b != a && dist[b] >= 4 && dist[b] <= 6 && !bonded(a, b)) {
          bond(a, b, BondOrder::kSingle);
          return;
        }
      }
    }
  }

  Molecule build() const {
    MoleculeBuilder b;
    for (const GAtom &g: atoms_)
      b.add_atom(g.atom, g.implicit);
    for (const Bond &bond: bonds_)
      b.add_bond(bond.begin, bond.end, bond.order);
    return std::move(b).build();
  }

 private:
  struct GAtom {
    Atom atom;
    bool implicit;
    bool extendable;
    int bv;
  };
  std::vector<GAtom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<std::vector<int>> adj_;
};

// Plain editable copy used for perturbations.
struct Draft {
  std::vector<Atom> atoms;
  std::vector<Bond> bonds;

  explicit Draft(const Molecule &m)
    : atoms(m.atoms().begin(), m.atoms().end()),
      bonds(m.bonds().begin(), m.bonds().end()) { }

  Molecule build() const {
    MoleculeBuilder b;
    for (const Atom &a: atoms)
      b.add_atom(a);
    for (const Bond &bond: bonds)
      b.add_bond(bond.begin, bond.end, bond.order);
    return std::move(b).build();
  }

  void remove_atom(int i) {
    std::erase_if(bonds, [&](const Bond &b) { return b.begin == i || b.end == i; });
    atoms.erase(atoms.begin() + i);
    for (Bond &b: bonds) {
      if (b.begin > i)
        --b.begin;
      if (b.end > i)
        --b.end;
    }
  }
};

Molecule add_random_attachments(Rng &rng, const Molecule &m, int count) {
  Draft d(m);
  for (int k = 0; k < count; ++k) {
    std::vector<int> cand;
    for (int i = 0; i < static_cast<int>(d.atoms.size()); ++i) {
      if (!d.atoms[i].is_attachment() && d.atoms[i].hydrogens > 0)
        cand.push_back(i);
    }
    if (cand.empty())
      break;
    const int a = pick_one(rng, cand);
    --d.atoms[a].hydrogens;
    d.atoms.push_back(Atom::attachment());
    d.bonds.push_back({ a, static_cast<int>(d.atoms.size()) - 1,
                        BondOrder::kSingle });
  }
  return d.build();
}

Molecule perturb(Rng &rng, const Molecule &q) {
  for (int attempt = 0; attempt < 8; ++attempt) {
    Draft d(q);
    const int what = pick(rng, 0, 2);
    if (what == 0) {
      std::vector<int> att;
      for (int i = 0; i < static_cast<int>(d.atoms.size()); ++i) {
        if (d.atoms[i].is_attachment())
          att.push_back(i);
      }
      if (att.empty())
        continue;
      const int a = pick_one(rng, att);
      for (const Bond &b: d.bonds) {
        if (b.begin == a || b.end == a)
          d.atoms[b.other(a)].hydrogens += valence_contribution(b.order);
      }
      d.remove_atom(a);
    } else if (what == 1) {
      std::vector<int> heavy;
      for (int i = 0; i < static_cast<int>(d.atoms.size()); ++i) {
        if (!d.atoms[i].is_attachment() && !d.atoms[i].aromatic
            && d.atoms[i].formal_charge == 0)
          heavy.push_back(i);
      }
      if (heavy.empty())
        continue;
      Atom &a = d.atoms[pick_one(rng, heavy)];
      a.element = pick_one(rng, std::vector<int> { 6, 7, 8, 16 });
    } else {
      std::vector<int> single;
      for (int i = 0; i < static_cast<int>(d.bonds.size()); ++i) {
        const Bond &b = d.bonds[i];
        if (!d.atoms[b.begin].is_attachment() && !d.atoms[b.end].is_attachment()
            && (b.order == BondOrder::kSingle || b.order == BondOrder::kDouble))
          single.push_back(i);
      }
      if (single.empty())
        continue;
      Bond &b = d.bonds[pick_one(rng, single)];
      b.order = b.order == BondOrder::kSingle ? BondOrder::kDouble
                                              : BondOrder::kSingle;
    }
    try {
      Molecule m = d.build();
      if (m.heavy_atom_count() > 0)
        return m;
    } catch (const Error &) {
    }
  }
  return q;
}

}  // namespace

Molecule random_molecule(Rng &rng, const MoleculeOptions &options) {
  const int n = pick(rng, options.min_heavy, options.max_heavy);
  Grower g;
  g.attach_unit(rng, -1, n, 0.0);
  g.grow_random(rng, n, options.charged);
  if (chance(rng, options.ring_closure))
    g.close_ring(rng);
  return g.build();
}

Molecule random_target(Rng &rng, int min_fragments, int max_fragments,
                       FragmentMode mode, int max_heavy) {
  const RuleSet rules = default_rule_set(mode);
  for (int attempt = 0;; ++attempt) {
    MoleculeOptions opt;
    opt.min_heavy = 8;
    opt.max_heavy = max_heavy;
    opt.charged = 0.01;
    Molecule m = random_molecule(rng, opt);
    const int k = fragment(m, rules).size();
    if ((k >= min_fragments && k <= max_fragments) || attempt > 10000)
      return m;
  }
}

Molecule cap_pattern(Rng &rng, const Molecule &pattern, int grow) {
  Grower g;
  std::vector<int> index(pattern.num_atoms(), -1);
  for (int i = 0; i < pattern.num_atoms(); ++i) {
    if (!pattern.atom(i).is_attachment()) {
      Atom a = pattern.atom(i);
      a.attachment_bond_id.reset();
      index[i] = g.add(a, false, false);
    }
  }
  std::vector<std::pair<int, BondOrder>> sites;
  for (const Bond &b: pattern.bonds()) {
    const int u = index[b.begin], v = index[b.end];
    if (u >= 0 && v >= 0)
      g.bond(u, v, b.order);
    else
      sites.emplace_back(u >= 0 ? u : v, b.order);
  }
  for (const auto &[anchor, order]: sites) {
    if (chance(rng, grow == 0 ? 0.5 : 0.25)) {
      g.atom(anchor).hydrogens += valence_contribution(order);
      continue;
    }
    if (grow == 0 || order != BondOrder::kSingle) {
      const int el = order == BondOrder::kSingle
                       ? pick_one(rng, std::vector<int> { 6, 6, 7, 8 })
                       : 6;
      const int c = g.add(make_atom(el), true, false);
      g.bond(anchor, c, order);
      continue;
    }
    g.attach_unit(rng, anchor, 6, 0.0);
  }
  if (grow > 0)
    g.grow_random(rng, g.size() + grow, 0.0);
  return g.build();
}

FragmentSet random_connected_members(Rng &rng, const FragmentDecomposition &d,
                                     int max_size) {
  const auto lists = d.neighbor_lists();
  const int size = pick(rng, 1, std::max(1, std::min(max_size, d.size())));
  FragmentSet s(d.size());
  s.insert(pick(rng, 0, d.size() - 1));
  while (s.size() < size) {
    std::vector<int> frontier;
    for (int f: s.members()) {
      for (int g: lists[f]) {
        if (!s.contains(g))
          frontier.push_back(g);
      }
    }
    if (frontier.empty())
      break;
    s.insert(pick_one(rng, frontier));
  }
  return s;
}

std::vector<std::string> toy_stock(Rng &rng, const FragmentDecomposition &d,
                                   int size) {
  std::vector<std::string> out;
  std::unordered_set<std::string> seen;
  // Sometimes one fragment gets no dedicated building blocks.
  const int skipped = chance(rng, 0.3) ? pick(rng, 0, d.size() - 1) : -1;
  int guard = 0;
  while (static_cast<int>(out.size()) < size && guard++ < size * 50) {
    const double r = std::uniform_real_distribution<double>(0, 1)(rng);
    Molecule m;
    try {
      if (r < 0.7) {
        const FragmentSet members = random_connected_members(rng, d, d.size());
        if (skipped >= 0 && members.contains(skipped))
          continue;
        const Molecule pattern = combination_pattern(d, members);
        m = cap_pattern(rng, pattern, r < 0.45 ? 0 : pick(rng, 1, 6));
      } else {
        MoleculeOptions opt;
        opt.max_heavy = 30;
        m = random_molecule(rng, opt);
      }
    } catch (const Error &) {
      continue;
    }
    std::string smi = write_smiles(m);
    if (seen.insert(smi).second)
      out.push_back(std::move(smi));
  }
  return out;
}

Molecule derived_query(Rng &rng, const Molecule &target, int max_atoms) {
  const int n = target.num_atoms();
  const int want = pick(rng, 1, std::min(max_atoms, n));
  std::vector<char> in(n, 0);
  std::vector<int> members { pick(rng, 0, n - 1) };
  in[members[0]] = 1;
  while (static_cast<int>(members.size()) < want) {
    std::vector<int> frontier;
    for (int a: members) {
      for (const Neighbor &nb: target.neighbors(a)) {
        if (!in[nb.atom])
          frontier.push_back(nb.atom);
      }
    }
    if (frontier.empty())
      break;
    const int next = pick_one(rng, frontier);
    in[next] = 1;
    members.push_back(next);
  }
  std::sort(members.begin(), members.end());
  MoleculeBuilder b;
  std::vector<int> index(n, -1);
  for (int a: members)
    index[a] = b.add_atom(target.atom(a));
  for (const Bond &bond: target.bonds()) {
    const int u = index[bond.begin], v = index[bond.end];
    if (u >= 0 && v >= 0) {
      b.add_bond(u, v, bond.order);
    } else if (u >= 0 || v >= 0) {
      const int att = b.add_atom(Atom::attachment());
      b.add_bond(u >= 0 ? u : v, att, bond.order);
    }
  }
  return std::move(b).build();
}

MatchPair random_match_pair(Rng &rng) {
  MoleculeOptions topt;
  topt.min_heavy = 2;
  topt.max_heavy = 24;
  MatchPair p;
  p.target = random_molecule(rng, topt);
  const double r = std::uniform_real_distribution<double>(0, 1)(rng);
  if (r < 0.5) {
    p.query = derived_query(rng, p.target, 12);
    if (chance(rng, 0.4))
      p.query = perturb(rng, p.query);
  } else if (r < 0.75) {
    const Molecule other = random_molecule(rng, topt);
    p.query = derived_query(rng, other, 12);
  } else {
    MoleculeOptions qopt;
    qopt.min_heavy = 1;
    qopt.max_heavy = 9;
    const Molecule base = random_molecule(rng, qopt);
    p.query = add_random_attachments(rng, base, pick(rng, 0, 3));
  }
  return p;
}

Molecule oligomer(int units) {
  std::string smi;
  for (int i = 0; i < units; ++i)
    smi += "NCCC(=O)";
  smi += "O";
  return parse_smiles(smi);
}

namespace {

// Decorated ring used as a benchmark building unit; returns the ring atom
// that carries the link.
int synthon(Rng &rng, Grower &g) {
  static const std::vector<std::vector<int>> kAromatic = {
    { 6, 6, 6, 6, 6, 6 }, { 6, 6, 7, 6, 6, 6 }, { 6, 7, 6, 7, 6, 6 },
    { 6, 6, 16, 6, 6 },   { 6, 6, 8, 6, 6 },
  };
  static const std::vector<std::vector<int>> kAliphatic = {
    { 6, 6, 7, 6, 6, 6 }, { 6, 6, 8, 6, 6, 7 }, { 6, 6, 6, 6, 6, 6 },
    { 6, 6, 7, 6, 6, 7 },
  };
  const bool aromatic = chance(rng, 0.7);
  const int link = g.ring(rng, aromatic ? pick_one(rng, kAromatic)
                                        : pick_one(rng, kAliphatic),
                          aromatic);
  const int decorations = pick(rng, 1, 3);
  for (int k = 0; k < decorations; ++k) {
    std::vector<int> ext;
    for (int i: g.extendable()) {
      if (i != link && g.atom(i).element == 6)
        ext.push_back(i);
    }
    if (ext.empty())
      break;
    const int at = pick_one(rng, ext);
    switch (pick(rng, 0, 5)) {
    case 0: {
      const int f = g.add(make_atom(9), true, false);
      g.bond(at, f, BondOrder::kSingle);
      break;
    }
    case 1: {
      const int cl = g.add(make_atom(17), true, false);
      g.bond(at, cl, BondOrder::kSingle);
      break;
    }
    case 2: {
      const int c = g.add(make_atom(6), true, false);
      g.bond(at, c, BondOrder::kSingle);
      break;
    }
    case 3: {
      const int o = g.add(make_atom(8), true, false);
      const int c = g.add(make_atom(6), true, false);
      g.bond(at, o, BondOrder::kSingle);
      g.bond(o, c, BondOrder::kSingle);
      break;
    }
    case 4: {
      const int c = g.add(make_atom(6), true, false);
      const int n = g.add(make_atom(7), true, false);
      g.bond(at, c, BondOrder::kSingle);
      g.bond(c, n, BondOrder::kTriple);
      break;
    }
    default: {
      const int c = g.add(make_atom(6), true, false);
      g.bond(at, c, BondOrder::kSingle);
      for (int j = 0; j < 3; ++j) {
        const int f = g.add(make_atom(9), true, false);
        g.bond(c, f, BondOrder::kSingle);
      }
      break;
    }
    }
  }
  return link;
}

// Joins atom `a` of the existing part to a new synthon through a link.
void link_synthon(Rng &rng, Grower &g, int a) {
  const int kind = pick(rng, 0, 3);
  int head = a;
  if (kind == 0 || kind == 1) {
    const int c = g.add(make_atom(6), true, false);
    const int o = g.add(make_atom(8), true, false);
    g.bond(head, c, BondOrder::kSingle);
    g.bond(c, o, BondOrder::kDouble);
    const int x = g.add(make_atom(kind == 0 ? 7 : 8), true, false);
    g.bond(c, x, BondOrder::kSingle);
    head = x;
  } else if (kind == 2) {
    const int s = g.add(make_atom(16), false, false);
    g.atom(s).hydrogens = 0;
    const int o1 = g.add(make_atom(8), true, false);
    const int o2 = g.add(make_atom(8), true, false);
    g.bond(head, s, BondOrder::kSingle);
    g.bond(s, o1, BondOrder::kDouble);
    g.bond(s, o2, BondOrder::kDouble);
    const int n = g.add(make_atom(7), true, false);
    g.bond(s, n, BondOrder::kSingle);
    head = n;
  }
  const int next = synthon(rng, g);
  g.bond(head, next, BondOrder::kSingle);
}

}  // namespace

Benchmark desk_benchmark(std::uint64_t seed, int stock_size, int num_targets) {
  Rng rng(seed);
  Benchmark bench;
  std::unordered_set<std::string> seen;
  const RuleSet rules = default_rule_set(FragmentMode::kBricsLike);

  while (static_cast<int>(bench.targets.size()) < num_targets) {
    Grower g;
    synthon(rng, g);
    const int parts = pick(rng, 4, 6);
    bool ok = true;
    for (int p = 1; p < parts && ok; ++p) {
      std::vector<int> carbons;
      for (int i: g.extendable()) {
        if (g.atom(i).element == 6 && g.atom(i).aromatic)
          carbons.push_back(i);
      }
      if (carbons.empty()) {
        for (int i: g.extendable()) {
          if (g.atom(i).element == 6)
            carbons.push_back(i);
        }
      }
      if (carbons.empty()) {
        ok = false;
        break;
      }
      link_synthon(rng, g, pick_one(rng, carbons));
    }
    if (!ok)
      continue;
    Molecule m;
    try {
      m = g.build();
    } catch (const Error &) {
      continue;
    }
    if (m.heavy_atom_count() < 30 || m.heavy_atom_count() > 60)
      continue;
    const FragmentDecomposition d = fragment(m, rules);
    if (d.size() < 3)
      continue;
    bench.targets.push_back(write_smiles(m));

    // Pieces of this target, so that many targets are solvable.
    for (int k = 0; k < 40; ++k) {
      const FragmentSet members = random_connected_members(rng, d, 3);
      Molecule bb = cap_pattern(rng, combination_pattern(d, members),
                                chance(rng, 0.5) ? 0 : pick(rng, 1, 4));
      std::string smi = write_smiles(bb);
      if (seen.insert(smi).second)
        bench.stock.push_back(std::move(smi));
    }
  }

  MoleculeOptions opt;
  opt.min_heavy = 8;
  opt.max_heavy = 30;
  opt.charged = 0.01;
  while (static_cast<int>(bench.stock.size()) < stock_size) {
    Molecule m;
    if (chance(rng, 0.3)) {
      Grower g;
      const int a = synthon(rng, g);
      if (chance(rng, 0.5))
        link_synthon(rng, g, a);
      else
        g.grow_random(rng, g.size() + pick(rng, 1, 8), 0.0);
      try {
        m = g.build();
      } catch (const Error &) {
        continue;
      }
    } else {
      m = random_molecule(rng, opt);
    }
    std::string smi = write_smiles(m);
    if (seen.insert(smi).second)
      bench.stock.push_back(std::move(smi));
  }
  // Target pieces should not cluster at the front of the file.
  std::shuffle(bench.stock.begin(), bench.stock.end(), rng);
  return bench;
}

}  // namespace fragretro::synth
