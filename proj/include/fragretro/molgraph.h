//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fragretro/elements.h"

namespace fragretro {

enum class BondOrder : std::uint8_t {
  kSingle = 1,
  kDouble = 2,
  kTriple = 3,
  kAromatic = 4,
};

// Contribution of a bond to the valence of each endpoint. Aromatic bonds
// count as one; aromatic atoms get their extra electron separately.
int valence_contribution(BondOrder order);

char bond_symbol(BondOrder order);

struct Atom {
  int element = 6;
  bool aromatic = false;
  int formal_charge = 0;
  // Hydrogen count after valence completion.
  int hydrogens = 0;
  // Cleaved-bond id; only meaningful on attachment atoms, and only set
  // once a fragmenter has assigned it.
  std::optional<int> attachment_bond_id;

  bool is_attachment() const { return element == kWildcard; }
  std::string_view symbol() const { return element_symbol(element); }

  static Atom attachment(std::optional<int> bond_id = std::nullopt) {
    Atom a;
    a.element = kWildcard;
    a.attachment_bond_id = bond_id;
    return a;
  }

  friend bool operator==(const Atom &, const Atom &) = default;
};

struct Bond {
  int begin = 0;
  int end = 0;
  BondOrder order = BondOrder::kSingle;

  int other(int atom) const { return atom == begin ? end : begin; }

  friend bool operator==(const Bond &, const Bond &) = default;
};

struct Neighbor {
  int atom;
  int bond;
};

struct Measures {
  int heavy_atoms = 0;
  int rings = 0;

  friend bool operator==(const Measures &, const Measures &) = default;
};

/// Immutable attributed graph of heavy atoms (hydrogens are folded into
/// Atom::hydrogens) plus optional attachment atoms.
///
/// Molecules are created through MoleculeBuilder or parse_smiles and are
/// never modified afterwards, so they can be shared freely across threads.
class Molecule {
 public:
  Molecule() = default;

  std::span<const Atom> atoms() const { return atoms_; }
  std::span<const Bond> bonds() const { return bonds_; }
  const Atom &atom(int i) const { return atoms_[i]; }
  const Bond &bond(int i) const { return bonds_[i]; }
  int num_atoms() const { return static_cast<int>(atoms_.size()); }
  int num_bonds() const { return static_cast<int>(bonds_.size()); }
  bool empty() const { return atoms_.empty(); }

  std::span<const Neighbor> neighbors(int atom) const {
    return { adjacency_.data() + offsets_[atom],
             adjacency_.data() + offsets_[atom + 1] };
  }
  int degree(int atom) const { return offsets_[atom + 1] - offsets_[atom]; }

  std::optional<int> find_bond(int a, int b) const;

  bool bond_in_ring(int bond) const { return ring_bond_[bond] != 0; }
  bool atom_in_ring(int atom) const { return ring_atom_[atom] != 0; }

  int heavy_atom_count() const { return heavy_atoms_; }
  int ring_count() const {
    return num_bonds() - num_atoms() + component_count_;
  }
  int component_count() const { return component_count_; }
  bool has_attachments() const { return heavy_atoms_ != num_atoms(); }

  // Indices of attachment atoms.
  std::vector<int> attachment_atoms() const;

  // Structural equality: identical atom and bond lists in the same order.
  friend bool operator==(const Molecule &a, const Molecule &b) {
    return a.atoms_ == b.atoms_ && a.bonds_ == b.bonds_;
  }

 private:
  friend class MoleculeBuilder;

  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<int> offsets_ { 0 };
  std::vector<Neighbor> adjacency_;
  std::vector<std::uint8_t> ring_bond_;
  std::vector<std::uint8_t> ring_atom_;
  int heavy_atoms_ = 0;
  int component_count_ = 0;
};

class MoleculeBuilder {
 public:
  MoleculeBuilder() = default;

  // Atoms added with implicit_hydrogens = true get their hydrogen count
  // from the default-valence model at build time; otherwise
  // atom.hydrogens is taken verbatim.
  int add_atom(const Atom &atom, bool implicit_hydrogens = false);
  // Throws GraphError on self loops, parallel bonds and bad indices.
  int add_bond(int a, int b, BondOrder order);

  int num_atoms() const { return static_cast<int>(atoms_.size()); }
  Atom &atom(int i) { return atoms_[i]; }
  const Atom &atom(int i) const { return atoms_[i]; }
  std::span<const Bond> bonds() const { return bonds_; }
  Bond &bond(int i) { return bonds_[i]; }

  // Implicit aromatic bonds outside rings become single bonds when
  // demote_acyclic_aromatic_bonds is set (SMILES semantics).
  void set_demote_acyclic_aromatic_bonds(bool on) { demote_ = on; }
  void mark_implicit_aromatic(int bond) { implicit_aromatic_.push_back(bond); }

  // Throws ValenceError, GraphError.
  Molecule build() &&;

 private:
  std::vector<Atom> atoms_;
  std::vector<Bond> bonds_;
  std::vector<bool> implicit_h_;
  std::vector<int> implicit_aromatic_;
  bool demote_ = false;
};

// Hydrogens implied by the default-valence model for an unbracketed atom
// with the given bond valence sum. Throws ValenceError when the sum
// exceeds every allowed valence.
int implicit_hydrogens(int element, bool aromatic, int bond_valence);

// Sum of valence contributions of all bonds incident to `atom`.
int bond_valence(const Molecule &m, int atom);

Measures measures(const Molecule &m);

/// Joins `a` and `b` over the cleaved bonds in `shared_bond_ids`: the
/// attachment atom carrying each id is removed from both sides and the two
/// anchors are bonded with the order recorded on the attachment bond.
/// Atoms of `a` keep their indices; atoms of `b` follow.
///
/// Throws NoSharedBond if the set is empty or an id is not present exactly
/// once on each side.
Molecule merge(const Molecule &a, const Molecule &b,
               std::span<const int> shared_bond_ids);

// SMILES I/O.

/// Organic subset, bracket atoms with H count and charge, lowercase
/// aromatic atoms, ring closures (digits and %nn) and '*'. Stereo marks are
/// accepted and dropped. Throws SyntaxError, MultiComponentError,
/// ValenceError.
Molecule parse_smiles(std::string_view text);

// Non-canonical; parse_smiles(write_smiles(m)) is isomorphic to m.
std::string write_smiles(const Molecule &m);

}  // namespace fragretro
