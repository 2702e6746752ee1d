//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fragretro/fragment_set.h"
#include "fragretro/molgraph.h"

namespace fragretro {

enum class FragmentMode {
  kBricsLike,
  kRbricsLike,
};

std::string_view to_string(FragmentMode mode);
std::optional<FragmentMode> fragment_mode_from_string(std::string_view text);

struct NeighborRequirement {
  int element = kWildcard;  // kWildcard matches any heavy atom
  std::optional<BondOrder> order;
  int count = 1;
};

/// Local environment of one endpoint of a cleavable bond. Neighbour
/// conditions never look at the bond partner.
struct AtomEnvironment {
  std::vector<int> elements;  // empty: any element
  std::optional<bool> aromatic;
  std::optional<bool> in_ring;
  // All bonds single and the atom not aromatic.
  std::optional<bool> saturated;
  // Has a neighbour that is C, S or P double bonded to O.
  std::optional<bool> acyl_neighbor;
  int min_degree = 0;
  int max_degree = 99;
  std::vector<NeighborRequirement> required;
  std::vector<NeighborRequirement> forbidden;

  bool matches(const Molecule &m, int atom, int partner) const;
};

AtomEnvironment parse_environment(std::string_view text);

struct CleavageRule {
  std::string rule_id;
  AtomEnvironment left;
  AtomEnvironment right;
  BondOrder order = BondOrder::kSingle;
  bool acyclic_only = true;

  bool matches(const Molecule &m, int bond) const;
};

// Structural cleavages that cannot be phrased as a two-atom environment.
enum class StructuralPass {
  kLongChain,   // every 4th bond of sp3 carbon chains of >= 7 atoms
  kRingBridge,  // both bonds of an sp3 carbon bridging two ring systems
};

struct RuleSet {
  std::vector<CleavageRule> rules;
  std::vector<StructuralPass> passes;
};

/// Parses a rule table. One rule per line:
///   rule_id <TAB> left_env <TAB> right_env <TAB> order <TAB> acyclic_only
/// or a structural pass:
///   @pass <TAB> long_chain | ring_bridge
/// Lines starting with '#' are comments. Throws RuleFormatError.
RuleSet parse_rule_table(std::string_view text);
RuleSet load_rule_table(const std::string &path);

// Shipped table for a mode; FRAGRETRO_RULES_DIR, when set, points at a
// directory holding brics_like.rules and rbrics_like.rules.
RuleSet default_rule_set(FragmentMode mode);

struct CleavageSite {
  int bond;
  std::string rule_id;

  friend bool operator==(const CleavageSite &, const CleavageSite &) = default;
};

// Sorted by bond index; the first matching rule in table order wins.
std::vector<CleavageSite> find_cleavage_bonds(const Molecule &m,
                                              const RuleSet &rules);

struct FragmentEdge {
  int a;
  int b;
  int bond_id;

  friend bool operator==(const FragmentEdge &, const FragmentEdge &) = default;
};

struct FragmentDecomposition {
  Molecule target;
  std::vector<Molecule> fragments;
  // Edges mirror cut bonds; two fragments may share several edges.
  std::vector<FragmentEdge> adjacency;
  std::map<int, std::string> rule_per_bond;
  // origin[f][i]: target atom of fragment atom i, -1 for attachments.
  std::vector<std::vector<int>> origin;

  int size() const { return static_cast<int>(fragments.size()); }
  // Neighbouring fragments of each fragment, sorted, without duplicates.
  std::vector<std::vector<int>> neighbor_lists() const;
  bool is_connected(const FragmentSet &members) const;
};

/// Cuts every cleavable bond at once. Bond ids are target bond indices.
/// A cut whose endpoints stay connected through other bonds is not made.
FragmentDecomposition fragment(const Molecule &m, const RuleSet &rules);
FragmentDecomposition fragment(const Molecule &m, FragmentMode mode);

/// Merges member fragments over their internal cleaved bonds; boundary
/// attachments remain. Throws DisconnectedMembers.
Molecule combination_pattern(const FragmentDecomposition &d,
                             const FragmentSet &members);
// Also lists (cut bond id, pattern bond) for every joined cut, by id.
Molecule combination_pattern(const FragmentDecomposition &d,
                             const FragmentSet &members,
                             std::vector<std::pair<int, int>> &joined);

}  // namespace fragretro
