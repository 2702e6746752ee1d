//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <string_view>

#include "support.h"

namespace fragretro {
namespace {

std::uint64_t fnv(std::string_view s) {
  return fnv1a64({ reinterpret_cast<const std::uint8_t *>(s.data()), s.size() });
}

TEST(Fnv1a, ReferenceVectors) {
  EXPECT_EQ(fnv(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(fnv("a"), 0xaf63dc4c8601ec8cULL);
  EXPECT_EQ(fnv("foobar"), 0x85944171f73967e8ULL);
}

TEST(Fingerprint, BitsetBasics) {
  PatternFingerprint a(130), b(130);
  a.set_bit(0);
  a.set_bit(129);
  EXPECT_TRUE(a.test(129));
  EXPECT_FALSE(a.test(64));
  EXPECT_EQ(a.popcount(), 2);
  EXPECT_FALSE(a.is_subset_of(b));
  b.set_bit(0);
  b.set_bit(129);
  b.set_bit(5);
  EXPECT_TRUE(a.is_subset_of(b));
  EXPECT_EQ(a.words().size(), 3u);
}

TEST(Fingerprint, Deterministic) {
  const Molecule m = parse_smiles(testing::kChainTarget);
  EXPECT_EQ(fingerprint(m), fingerprint(m));
  EXPECT_EQ(fingerprint(m), fingerprint(parse_smiles(write_smiles(m))));
  EXPECT_EQ(fingerprint(m).nbits(), 2048);
  EXPECT_GT(fingerprint(m).popcount(), 20);
}

TEST(Fingerprint, RejectsBadParams) {
  const Molecule m = parse_smiles("CCO");
  EXPECT_THROW(fingerprint(m, { 0, 7 }), Error);
  EXPECT_THROW(fingerprint(m, { 2048, -1 }), Error);
}

TEST(Fingerprint, AttachmentsAddNoBits) {
  EXPECT_EQ(fingerprint(parse_smiles("CC(=O)*")).popcount() > 0, true);
  EXPECT_TRUE(fingerprint(parse_smiles("CC(=O)*")).is_subset_of(fingerprint(parse_smiles("CC=O"))));
}

TEST(Fingerprint, DistinguishesLabels) {
  EXPECT_FALSE(fingerprint(parse_smiles("CCN")).is_subset_of(fingerprint(parse_smiles("CCO"))));
  EXPECT_FALSE(fingerprint(parse_smiles("c1ccccc1")).is_subset_of(fingerprint(parse_smiles("C1CCCCC1"))));
  EXPECT_FALSE(fingerprint(parse_smiles("CC=O")).is_subset_of(fingerprint(parse_smiles("CCO"))));
  // Ring status is encoded: a saturated ring is not a subset of a chain.
  EXPECT_FALSE(fingerprint(parse_smiles("C1CCCC1")).is_subset_of(fingerprint(parse_smiles("CCCCCCC"))));
}

TEST(Fingerprint, SubsetForEveryMatch) {
  synth::Rng rng(91);
  int matched = 0;
  for (const int nbits: { 2048, 256, 64 }) {
    for (const int path_max: { 7, 3, 0 }) {
      const FingerprintParams params { nbits, path_max };
      for (int i = 0; i < 300; ++i) {
        const synth::MatchPair p = synth::random_match_pair(rng);
        if (!oracle::naive_match(p.query, p.target))
          continue;
        ++matched;
        ASSERT_TRUE(fingerprint(p.query, params).is_subset_of(fingerprint(p.target, params)))
          << write_smiles(p.query) << " in " << write_smiles(p.target);
      }
    }
  }
  EXPECT_GT(matched, 500);
}

TEST(Fingerprint, FragmentsAndCombinationsAreSubsets) {
  for (const Molecule &m: testing::random_corpus(92, 200)) {
    const PatternFingerprint whole = fingerprint(m);
    const FragmentDecomposition d = fragment(m, FragmentMode::kBricsLike);
    for (int f = 0; f < d.size(); ++f)
      EXPECT_TRUE(fingerprint(d.fragments[f]).is_subset_of(whole)) << write_smiles(m);
    for (const FragmentEdge &e: d.adjacency) {
      const FragmentSet s = testing::set_of(d.size(), { e.a, e.b });
      EXPECT_TRUE(fingerprint(combination_pattern(d, s)).is_subset_of(whole));
    }
  }
}

}  // namespace
}  // namespace fragretro
