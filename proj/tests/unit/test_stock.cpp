//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <iterator>

#include "support.h"

namespace fragretro {
namespace {

std::string temp_path(const std::string &name) {
  return ::testing::TempDir() + "fragretro_" + name;
}

std::string slurp(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  return { std::istreambuf_iterator<char>(in), {} };
}

void spit(const std::string &path, const std::string &bytes) {
  std::ofstream(path, std::ios::binary) << bytes;
}

const char *kText =
  "# building blocks\n"
  "CCO\tethanol\n"
  "\n"
  "c1ccccc1O\n"
  "CCO\n"
  "OC(=O)c1ccccc1\n"
  "C1CCCCC1N\n"
  "NCC(=O)O\n"
  "CC(C)CO\n"
  "Oc1ccncc1\n"
  "CS(=O)(=O)Cl\n"
  "NC1CCOCC1\n"
  "N1CCCC1\n";

TEST(Sha256, ReferenceVectors) {
  EXPECT_EQ(to_hex(sha256("")),
            "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  EXPECT_EQ(to_hex(sha256("abc")),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST(Stock, BuildSkipsCommentsAndDuplicates) {
  const Stock s = build_stock_from_text(kText);
  ASSERT_EQ(s.size(), 10);
  EXPECT_EQ(s.entry(0).smiles, "CCO");
  EXPECT_EQ(s.entry(1).smiles, "c1ccccc1O");
  for (int i = 0; i < s.size(); ++i) {
    EXPECT_EQ(s.entry(i).id, i);
    EXPECT_EQ(s.entry(i).heavy_atoms, s.entry(i).molecule.heavy_atom_count());
    EXPECT_EQ(s.entry(i).rings, s.entry(i).molecule.ring_count());
    EXPECT_EQ(s.entry(i).fp, fingerprint(s.entry(i).molecule));
  }
  EXPECT_EQ(s.parse_failures(), 0);
  EXPECT_EQ(s.source_digest(), sha256(kText));
}

TEST(Stock, CountsFailures) {
  const Stock s = build_stock_from_text(std::string(kText) + "C(C\n");
  EXPECT_EQ(s.size(), 10);
  EXPECT_EQ(s.parse_failures(), 1);
  EXPECT_THROW(build_stock_from_text("CCO\nC(C\n*C\nCC.O\nCCC\n"), TooManyParseFailures);
}

TEST(Stock, WorkersGiveSameStock) {
  EXPECT_EQ(build_stock_from_text(kText, {}, 1), build_stock_from_text(kText, {}, 4));
}

TEST(Stock, MissingFile) {
  EXPECT_THROW(build_stock("/nonexistent/stock.smi"), IoError);
  EXPECT_THROW(load_cache("/nonexistent/stock.frsk"), IoError);
}

TEST(Cache, RoundTripIsExact) {
  const Stock s = build_stock_from_text(kText, { 512, 5 });
  const std::string a = temp_path("rt_a.frsk"), b = temp_path("rt_b.frsk");
  save_cache(s, a);
  const Stock back = load_cache(a, FingerprintParams { 512, 5 }, sha256(kText));
  EXPECT_EQ(back, s);
  save_cache(back, b);
  EXPECT_EQ(slurp(a), slurp(b));
  EXPECT_EQ(slurp(a).substr(0, 4), "FRSK");
}

TEST(Cache, EmptyStockRoundTrips) {
  const Stock s = build_stock_from_text("# nothing\n");
  const std::string path = temp_path("empty.frsk");
  save_cache(s, path);
  EXPECT_EQ(load_cache(path), s);
}

TEST(Cache, ParameterAndDigestMismatch) {
  const Stock s = build_stock_from_text(kText);
  const std::string path = temp_path("mismatch.frsk");
  save_cache(s, path);
  EXPECT_THROW(load_cache(path, FingerprintParams { 1024, 7 }), CacheVersionMismatch);
  EXPECT_THROW(load_cache(path, FingerprintParams { 2048, 6 }), CacheVersionMismatch);
  EXPECT_THROW(load_cache(path, std::nullopt, sha256("other")), CacheVersionMismatch);
  EXPECT_NO_THROW(load_cache(path, FingerprintParams {}));
}

TEST(Cache, ForeignMagicAndVersion) {
  const Stock s = build_stock_from_text(kText);
  const std::string path = temp_path("magic.frsk");
  save_cache(s, path);
  const std::string bytes = slurp(path);
  std::string magic = bytes;
  magic[0] = 'X';
  spit(path, magic);
  EXPECT_THROW(load_cache(path), CacheVersionMismatch);
  std::string version = bytes;
  version[4] = 2;
  spit(path, version);
  EXPECT_THROW(load_cache(path), CacheVersionMismatch);
}

TEST(Cache, TruncationAndCorruption) {
  const Stock s = build_stock_from_text(kText);
  const std::string path = temp_path("corrupt.frsk");
  save_cache(s, path);
  const std::string bytes = slurp(path);
  for (const std::size_t keep: { std::size_t { 0 }, std::size_t { 10 }, bytes.size() / 2,
                                 bytes.size() - 1 }) {
    spit(path, bytes.substr(0, keep));
    EXPECT_THROW(load_cache(path), CorruptCache) << keep;
  }
  for (const std::size_t at: { std::size_t { 60 }, bytes.size() / 2, bytes.size() - 20 }) {
    std::string flipped = bytes;
    flipped[at] ^= 0x10;
    spit(path, flipped);
    EXPECT_THROW(load_cache(path), CorruptCache) << at;
  }
}

}  // namespace
}  // namespace fragretro
