//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <numeric>

#include "support.h"

namespace fragretro {
namespace {

// Cyclomatic number from a BFS spanning forest.
int spanning_forest_rings(const Molecule &m) {
  std::vector<int> seen(m.num_atoms(), 0);
  int tree_edges = 0;
  for (int s = 0; s < m.num_atoms(); ++s) {
    if (seen[s])
      continue;
    seen[s] = 1;
    std::vector<int> queue { s };
    while (!queue.empty()) {
      const int a = queue.back();
      queue.pop_back();
      for (const auto &[b, bond]: m.neighbors(a)) {
        (void)bond;
        if (!seen[b]) {
          seen[b] = 1;
          ++tree_edges;
          queue.push_back(b);
        }
      }
    }
  }
  return m.num_bonds() - tree_edges;
}

TEST(Molecule, HydrogensFromValence) {
  const Molecule m = parse_smiles("CC(=O)O");
  EXPECT_EQ(m.atom(0).hydrogens, 3);
  EXPECT_EQ(m.atom(1).hydrogens, 0);
  EXPECT_EQ(m.atom(2).hydrogens, 0);
  EXPECT_EQ(m.atom(3).hydrogens, 1);
}

TEST(Molecule, AromaticHydrogens) {
  const Molecule m = parse_smiles("c1ccncc1");
  for (int i = 0; i < m.num_atoms(); ++i)
    EXPECT_EQ(m.atom(i).hydrogens, m.atom(i).element == 7 ? 0 : 1) << i;
  const Molecule pyrrole = parse_smiles("c1cc[nH]c1");
  EXPECT_EQ(pyrrole.atom(3).hydrogens, 1);
}

TEST(Molecule, ChargedAtoms) {
  const Molecule m = parse_smiles("C[NH3+]");
  EXPECT_EQ(m.atom(1).formal_charge, 1);
  EXPECT_EQ(m.atom(1).hydrogens, 3);
  const Molecule o = parse_smiles("CC(=O)[O-]");
  EXPECT_EQ(o.atom(3).formal_charge, -1);
  EXPECT_EQ(o.atom(3).hydrogens, 0);
}

TEST(Molecule, RingMembership) {
  const Molecule m = parse_smiles("c1ccccc1CC1CC1");
  for (int i = 0; i < 6; ++i)
    EXPECT_TRUE(m.atom_in_ring(i));
  EXPECT_FALSE(m.atom_in_ring(6));
  EXPECT_TRUE(m.atom_in_ring(7));
  const auto b = m.find_bond(5, 6);
  ASSERT_TRUE(b);
  EXPECT_FALSE(m.bond_in_ring(*b));
  EXPECT_EQ(m.ring_count(), 2);
}

TEST(Molecule, RingCounts) {
  EXPECT_EQ(parse_smiles("CCO").ring_count(), 0);
  EXPECT_EQ(parse_smiles("c1ccc2ccccc2c1").ring_count(), 2);
  EXPECT_EQ(parse_smiles("C12C3C4C1C5C2C3C45").ring_count(), 5);
  EXPECT_EQ(parse_smiles("C1CC2CCC1C2").ring_count(), 2);
}

TEST(Molecule, RingCountMatchesSpanningForest) {
  for (const Molecule &m: testing::random_corpus(11, 300)) {
    EXPECT_EQ(m.ring_count(), spanning_forest_rings(m)) << write_smiles(m);
    EXPECT_EQ(m.component_count(), 1);
  }
}

TEST(Molecule, AttachmentsAreNotHeavy) {
  const Molecule m = parse_smiles("*CC(*)O");
  EXPECT_EQ(m.num_atoms(), 5);
  EXPECT_EQ(m.heavy_atom_count(), 3);
  EXPECT_TRUE(m.has_attachments());
  EXPECT_EQ(m.attachment_atoms(), (std::vector<int> { 0, 3 }));
  EXPECT_EQ(measures(m), (Measures { 3, 0 }));
}

TEST(Molecule, NeighborsAreSymmetric) {
  for (const Molecule &m: testing::random_corpus(12, 100)) {
    int total = 0;
    for (int a = 0; a < m.num_atoms(); ++a) {
      total += m.degree(a);
      for (const auto &[b, bond]: m.neighbors(a)) {
        EXPECT_EQ(m.bond(bond).other(a), b);
        EXPECT_EQ(m.find_bond(b, a), bond);
      }
    }
    EXPECT_EQ(total, 2 * m.num_bonds());
  }
}

TEST(Merge, JoinsOnSharedBondId) {
  MoleculeBuilder left;
  const int c = left.add_atom(Atom {}, true);
  const int s = left.add_atom(Atom::attachment(7));
  left.add_bond(c, s, BondOrder::kSingle);
  MoleculeBuilder right;
  Atom oxygen;
  oxygen.element = 8;
  const int o = right.add_atom(oxygen, true);
  const int t = right.add_atom(Atom::attachment(7));
  right.add_bond(o, t, BondOrder::kSingle);
  const std::vector<int> ids { 7 };
  const Molecule m = merge(std::move(left).build(), std::move(right).build(), ids);
  EXPECT_TRUE(testing::same_graph(m, parse_smiles("CO")));
  EXPECT_FALSE(m.has_attachments());
}

TEST(Merge, MissingIdThrows) {
  const Molecule a = parse_smiles("C*");
  const std::vector<int> ids { 3 };
  EXPECT_THROW(merge(a, a, ids), NoSharedBond);
  EXPECT_THROW(merge(a, a, {}), NoSharedBond);
}

TEST(Elements, SymbolsRoundTrip) {
  for (int z = 1; z <= kMaxElement; ++z) {
    const auto back = element_from_symbol(element_symbol(z));
    ASSERT_TRUE(back) << z;
    EXPECT_EQ(*back, z);
  }
  EXPECT_FALSE(element_from_symbol("Xx"));
}

}  // namespace
}  // namespace fragretro
