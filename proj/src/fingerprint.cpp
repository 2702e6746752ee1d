//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#include "fragretro/fingerprint.h"

#include <algorithm>
#include <bit>
#include <unordered_map>

#include "fragretro/errors.h"

namespace fragretro {
namespace {

constexpr std::uint8_t kPlainFamily = 0xA1;
constexpr std::uint8_t kRingFamily = 0xB2;

// Anchors are internal atoms with at least one attachment neighbour. An
// acyclic atom is ambiguous when an embedding could route a ring through
// it via extra neighbours: two free slots on the atom, or one slot and one
// anchor-bearing branch, or two anchor-bearing branches.
std::vector<char> ring_status_known(const Molecule &m) {
  const int n = m.num_atoms();
  std::vector<char> known(n, 1);
  if (!m.has_attachments())
    return known;

  std::vector<int> slots(n, 0);
  for (int i = 0; i < n; ++i) {
    if (!m.atom(i).is_attachment())
      continue;
    for (const Neighbor &nb: m.neighbors(i))
      ++slots[nb.atom];
  }

  // Ring systems are the atoms joined by ring bonds; bridges between them
  // form a forest.
  std::vector<int> comp(n, -1);
  int ncomp = 0;
  std::vector<int> stack;
  for (int s = 0; s < n; ++s) {
    if (comp[s] >= 0 || m.atom(s).is_attachment())
      continue;
    comp[s] = ncomp;
    stack.assign(1, s);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (const Neighbor &nb: m.neighbors(u)) {
        if (m.bond_in_ring(nb.bond) && comp[nb.atom] < 0) {
          comp[nb.atom] = ncomp;
          stack.push_back(nb.atom);
        }
      }
    }
    ++ncomp;
  }
  std::vector<int> weight(ncomp, 0);
  for (int i = 0; i < n; ++i) {
    if (comp[i] >= 0 && slots[i] > 0)
      ++weight[comp[i]];
  }

  std::vector<std::vector<int>> tree(ncomp);
  for (const Bond &b: m.bonds()) {
    const int cu = comp[b.begin], cv = comp[b.end];
    if (cu < 0 || cv < 0 || cu == cv)
      continue;
    tree[cu].push_back(cv);
    tree[cv].push_back(cu);
  }

  // Root every tree, accumulate subtree anchor counts.
  std::vector<int> parent(ncomp, -2), sub(ncomp, 0), total(ncomp, 0);
  std::vector<int> order;
  for (int r = 0; r < ncomp; ++r) {
    if (parent[r] != -2)
      continue;
    parent[r] = -1;
    const std::size_t first = order.size();
    stack.assign(1, r);
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      order.push_back(u);
      for (int v: tree[u]) {
        if (parent[v] == -2) {
          parent[v] = u;
          stack.push_back(v);
        }
      }
    }
    for (std::size_t k = order.size(); k-- > first;) {
      const int u = order[k];
      sub[u] += weight[u];
      if (parent[u] >= 0)
        sub[parent[u]] += sub[u];
    }
    for (std::size_t k = first; k < order.size(); ++k)
      total[order[k]] = sub[r];
  }

  for (int a = 0; a < n; ++a) {
    if (comp[a] < 0 || m.atom_in_ring(a))
      continue;
    if (slots[a] >= 2) {
      known[a] = 0;
      continue;
    }
    const int ca = comp[a];
    int branches_with_anchor = 0;
    for (const Neighbor &nb: m.neighbors(a)) {
      const int cb = comp[nb.atom];
      if (cb < 0)
        continue;
      const int side = parent[cb] == ca ? sub[cb] : total[ca] - sub[ca];
      branches_with_anchor += side > 0;
    }
    if (branches_with_anchor >= 2
        || (slots[a] == 1 && branches_with_anchor >= 1))
      known[a] = 0;
  }
  return known;
}

// Enumerates simple paths over internal atoms, each once in the orientation
// whose first atom index is smaller. With a `through` mask only paths that
// use a marked bond are hashed, and only in the plain family.
class PathHasher {
 public:
  PathHasher(const Molecule &m, const FingerprintParams &params,
             PatternFingerprint &out, std::span<const char> through = {})
    : m_(m), params_(params), out_(out), through_(through) {
    if (through_.empty())
      known_ = ring_status_known(m);
  }

  void run() {
    if (through_.empty()) {
      for (int s = 0; s < m_.num_atoms(); ++s)
        start(s);
      return;
    }
    for (int s: ball())
      start(s);
  }

 private:
  // Internal atoms within path_max bonds of a marked bond, ascending.
  std::vector<int> ball() const {
    std::unordered_map<int, int> dist;
    std::vector<int> queue;
    for (int b = 0; b < m_.num_bonds(); ++b) {
      if (!through_[b])
        continue;
      for (int a: { m_.bond(b).begin, m_.bond(b).end }) {
        if (dist.emplace(a, 0).second)
          queue.push_back(a);
      }
    }
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const int u = queue[head];
      const int du = dist[u];
      if (du >= params_.path_max)
        continue;
      for (const Neighbor &nb: m_.neighbors(u)) {
        if (m_.atom(nb.atom).is_attachment())
          continue;
        if (dist.emplace(nb.atom, du + 1).second)
          queue.push_back(nb.atom);
      }
    }
    std::sort(queue.begin(), queue.end());
    return queue;
  }

  void start(int s) {
    if (m_.atom(s).is_attachment())
      return;
    atoms_.assign(1, s);
    bonds_.clear();
    marked_ = 0;
    extend();
  }

  bool on_path(int atom) const {
    return std::find(atoms_.begin(), atoms_.end(), atom) != atoms_.end();
  }

  void extend() {
    if ((atoms_.size() == 1 || atoms_.front() < atoms_.back())
        && (through_.empty() || marked_ > 0))
      emit();
    if (static_cast<int>(bonds_.size()) >= params_.path_max)
      return;
    const int last = atoms_.back();
    for (const Neighbor &nb: m_.neighbors(last)) {
      if (on_path(nb.atom) || m_.atom(nb.atom).is_attachment())
        continue;
      const int mark = through_.empty() ? 0 : through_[nb.bond];
      atoms_.push_back(nb.atom);
      bonds_.push_back(static_cast<std::uint8_t>(m_.bond(nb.bond).order));
      marked_ += mark;
      extend();
      marked_ -= mark;
      atoms_.pop_back();
      bonds_.pop_back();
    }
  }

  std::uint16_t token(int atom, bool ring) const {
    const Atom &a = m_.atom(atom);
    auto t = static_cast<std::uint16_t>(
      a.element | (a.aromatic ? 1 << 7 : 0) | ((a.formal_charge + 8) << 8));
    if (ring)
      t |= m_.atom_in_ring(atom) ? 0xC000 : 0x4000;
    return t;
  }

  void emit() {
    hash_family(kPlainFamily, false);
    if (known_.empty())
      return;
    bool all_known = true;
    for (int a: atoms_)
      all_known = all_known && known_[a];
    if (all_known)
      hash_family(kRingFamily, true);
  }

  void hash_family(std::uint8_t family, bool ring) {
    const std::size_t k = atoms_.size();
    // Pick the orientation with the lexicographically smaller token string.
    bool reverse = false;
    for (std::size_t i = 0; i < k; ++i) {
      const std::uint16_t f = token(atoms_[i], ring);
      const std::uint16_t r = token(atoms_[k - 1 - i], ring);
      if (f != r) {
        reverse = r < f;
        break;
      }
      if (i + 1 < k && bonds_[i] != bonds_[k - 2 - i]) {
        reverse = bonds_[k - 2 - i] < bonds_[i];
        break;
      }
    }
    bytes_.clear();
    bytes_.push_back(family);
    bytes_.push_back(static_cast<std::uint8_t>(k));
    for (std::size_t i = 0; i < k; ++i) {
      const std::size_t ai = reverse ? k - 1 - i : i;
      const std::uint16_t t = token(atoms_[ai], ring);
      bytes_.push_back(static_cast<std::uint8_t>(t & 0xFF));
      bytes_.push_back(static_cast<std::uint8_t>(t >> 8));
      if (i + 1 < k)
        bytes_.push_back(reverse ? bonds_[k - 2 - i] : bonds_[i]);
    }
    const std::uint64_t h = fnv1a64(bytes_);
    out_.set_bit(static_cast<int>(h % static_cast<std::uint64_t>(params_.nbits)));
  }

  const Molecule &m_;
  const FingerprintParams &params_;
  PatternFingerprint &out_;
  std::span<const char> through_;
  std::vector<char> known_;
  std::vector<int> atoms_;
  std::vector<std::uint8_t> bonds_;
  std::vector<std::uint8_t> bytes_;
  int marked_ = 0;
};

void check_params(const FingerprintParams &params) {
  if (params.nbits < 1 || params.path_max < 0)
    throw Error("fingerprint needs nbits >= 1 and path_max >= 0");
}

}  // namespace

int PatternFingerprint::popcount() const {
  int n = 0;
  for (std::uint64_t w: words_)
    n += std::popcount(w);
  return n;
}

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes,
                      std::uint64_t seed) {
  std::uint64_t h = seed;
  for (std::uint8_t b: bytes) {
    h ^= b;
    h *= 1099511628211ULL;
  }
  return h;
}

PatternFingerprint fingerprint(const Molecule &m,
                               const FingerprintParams &params) {
  check_params(params);
  PatternFingerprint fp(params.nbits);
  PathHasher(m, params, fp).run();
  return fp;
}

void add_paths_through(const Molecule &m, std::span<const int> bonds,
                       const FingerprintParams &params,
                       PatternFingerprint &fp) {
  check_params(params);
  if (fp.nbits() != params.nbits)
    throw Error("fingerprint width differs from params");
  if (bonds.empty())
    return;
  std::vector<char> mask(m.num_bonds(), 0);
  for (int b: bonds)
    mask.at(b) = 1;
  PathHasher(m, params, fp, mask).run();
}

PatternFingerprint &PatternFingerprint::operator|=(const PatternFingerprint &other) {
  if (other.nbits_ != nbits_)
    throw Error("fingerprint widths differ");
  for (std::size_t k = 0; k < words_.size(); ++k)
    words_[k] |= other.words_[k];
  return *this;
}

}  // namespace fragretro
