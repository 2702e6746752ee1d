//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fragretro/molgraph.h"

namespace fragretro {

/// Per-atom constraint of a compiled query.
struct PatternAtomConstraint {
  int element = 6;
  bool aromatic = false;
  int formal_charge = 0;
  int hydrogens = 0;
  bool in_ring = false;
  int required_internal_degree = 0;
  int attachment_slots = 0;
};

/// A query molecule compiled once and matched against many targets.
///
/// Internal (non-attachment) query atoms map injectively onto target atoms
/// with equal element, aromatic flag and charge; bonds between mapped atoms
/// exist in the target iff they exist in the query, with equal order. A
/// target atom may carry extra heavy neighbours outside the image only up
/// to the number of attachment atoms on its query atom. In-ring query
/// atoms need in-ring images.
class SubstructureQuery {
 public:
  enum class Mode {
    kStrict,
    // Wildcards become ordinary atoms, hydrogens must agree and no extra
    // neighbours are allowed (isomorphism when sizes agree).
    kExact,
  };

  // Throws QueryHasNoInternalAtoms in strict mode.
  explicit SubstructureQuery(const Molecule &query, Mode mode = Mode::kStrict);

  bool matches(const Molecule &target) const;
  // Distinct embeddings, stopping at `limit`.
  std::int64_t count(const Molecule &target, std::int64_t limit) const;

  int size() const { return static_cast<int>(atoms_.size()); }
  const PatternAtomConstraint &constraint(int i) const { return atoms_[i]; }

 private:
  std::int64_t search(const Molecule &target, std::int64_t limit) const;
  bool compatible(int q, const Molecule &target, int t) const;

  Mode mode_;
  std::vector<PatternAtomConstraint> atoms_;
  std::span<const std::pair<int, BondOrder>> internal(int q) const {
    return { adjacency_.data() + offsets_[q], adjacency_.data() + offsets_[q + 1] };
  }

  // Internal neighbours of each query atom (query index, order), CSR.
  std::vector<int> offsets_;
  std::vector<std::pair<int, BondOrder>> adjacency_;
  std::vector<int> label_class_;
  int num_classes_ = 0;
};

// Throws QueryHasNoInternalAtoms.
bool match_substructure(const Molecule &query, const Molecule &target);

// Attachments, when present, are compared as ordinary '*' atoms.
bool is_isomorphic(const Molecule &a, const Molecule &b);

std::int64_t count_embeddings(const Molecule &query, const Molecule &target,
                              std::int64_t limit);

}  // namespace fragretro
