//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include "support.h"

namespace fragretro {
namespace {

int total_hydrogens(const Molecule &m) {
  int h = 0;
  for (const Atom &a: m.atoms())
    h += a.hydrogens;
  return h;
}

TEST(Smiles, ParsesBasics) {
  const Molecule m = parse_smiles("CC#N");
  ASSERT_EQ(m.num_atoms(), 3);
  EXPECT_EQ(m.bond(1).order, BondOrder::kTriple);
  EXPECT_EQ(m.atom(2).element, 7);
  EXPECT_EQ(parse_smiles("ClCBr").atom(0).element, 17);
  EXPECT_EQ(parse_smiles("[Na+]").atom(0).formal_charge, 1);
}

TEST(Smiles, RingClosureDigitsAndPercent) {
  const Molecule a = parse_smiles("C1CCCCC1");
  const Molecule b = parse_smiles("C%10CCCCC%10");
  EXPECT_TRUE(testing::same_graph(a, b));
  EXPECT_EQ(a.ring_count(), 1);
}

TEST(Smiles, AromaticBondsBetweenRings) {
  const Molecule m = parse_smiles("c1ccccc1-c1ccccc1");
  const auto b = m.find_bond(5, 6);
  ASSERT_TRUE(b);
  EXPECT_EQ(m.bond(*b).order, BondOrder::kSingle);
  EXPECT_EQ(m.bond(0).order, BondOrder::kAromatic);
}

TEST(Smiles, Errors) {
  EXPECT_THROW(parse_smiles(""), SyntaxError);
  EXPECT_THROW(parse_smiles("C1CC"), SyntaxError);
  EXPECT_THROW(parse_smiles("C(C"), SyntaxError);
  EXPECT_THROW(parse_smiles("[Xx]"), SyntaxError);
  EXPECT_THROW(parse_smiles("CC.O"), MultiComponentError);
  EXPECT_THROW(parse_smiles("*(C)C"), SyntaxError);
  EXPECT_THROW(parse_smiles("C(C)(C)(C)(C)C"), ValenceError);
}

TEST(Smiles, WildcardAttachments) {
  const Molecule m = parse_smiles("*C(=O)N*");
  EXPECT_EQ(m.attachment_atoms().size(), 2u);
  EXPECT_EQ(m.heavy_atom_count(), 3);
}

TEST(Smiles, RoundTripSamples) {
  for (const char *s: { "CC(=O)Oc1ccccc1C(=O)O", "C[NH3+]", "CC(=O)[O-]",
                        "c1ccc2[nH]ccc2c1", "O=S(=O)(N)c1ccc(cc1)Cl",
                        "C1CC2CCC1C2", "N#CC=CC", "*c1ccncc1" }) {
    const Molecule m = parse_smiles(s);
    const Molecule back = parse_smiles(write_smiles(m));
    EXPECT_EQ(back.num_atoms(), m.num_atoms()) << s;
    EXPECT_EQ(total_hydrogens(back), total_hydrogens(m)) << s;
    EXPECT_TRUE(oracle::naive_match(m, back) || m.has_attachments()) << s;
  }
}

TEST(Smiles, RoundTripCorpus) {
  for (const Molecule &m: testing::random_corpus(2024, 1000)) {
    const std::string text = write_smiles(m);
    const Molecule back = parse_smiles(text);
    ASSERT_TRUE(testing::same_graph(m, back)) << text;
    EXPECT_EQ(total_hydrogens(back), total_hydrogens(m)) << text;
    EXPECT_EQ(measures(back), measures(m)) << text;
    EXPECT_EQ(write_smiles(back), write_smiles(parse_smiles(write_smiles(back))))
      << text;
  }
}

}  // namespace
}  // namespace fragretro
