//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fragretro/fingerprint.h"
#include "fragretro/molgraph.h"

namespace fragretro {

using Digest = std::array<std::uint8_t, 32>;

struct StockEntry {
  int id = 0;
  std::string smiles;
  Molecule molecule;
  PatternFingerprint fp;
  int heavy_atoms = 0;
  int rings = 0;

  friend bool operator==(const StockEntry &, const StockEntry &) = default;
};

/// Immutable building-block inventory. Ids are dense and follow input
/// order after duplicate removal.
class Stock {
 public:
  Stock() = default;
  Stock(std::vector<StockEntry> entries, FingerprintParams params,
        Digest digest, int parse_failures = 0);

  std::span<const StockEntry> entries() const { return entries_; }
  const StockEntry &entry(int id) const { return entries_[id]; }
  int size() const { return static_cast<int>(entries_.size()); }
  bool empty() const { return entries_.empty(); }

  const FingerprintParams &params() const { return params_; }
  const Digest &source_digest() const { return digest_; }
  // Lines skipped at build time; not persisted.
  int parse_failures() const { return parse_failures_; }

  friend bool operator==(const Stock &a, const Stock &b) {
    return a.entries_ == b.entries_ && a.params_ == b.params_
           && a.digest_ == b.digest_;
  }

 private:
  std::vector<StockEntry> entries_;
  FingerprintParams params_;
  Digest digest_ {};
  int parse_failures_ = 0;
};

Digest sha256(std::string_view data);
std::string to_hex(const Digest &d);

/// Builds a stock from SMILES file text: one record per line, an optional
/// TAB-separated label is ignored, '#' lines and blank lines are skipped.
/// Exact duplicate SMILES keep the first occurrence. Lines that fail to
/// parse, have several components or contain '*' are counted; more than
/// 10% failing records throws TooManyParseFailures.
Stock build_stock_from_text(std::string_view text,
                            const FingerprintParams &params = {},
                            int workers = 1);

// Throws IoError, TooManyParseFailures.
Stock build_stock(const std::string &path, const FingerprintParams &params = {},
                  int workers = 1);

// Throws IoError.
void save_cache(const Stock &stock, const std::string &path);

/// Throws IoError, CorruptCache on checksum or framing errors, and
/// CacheVersionMismatch on a foreign magic or version, on parameters that
/// differ from `expected` or on a digest that differs from
/// `expected_digest`.
Stock load_cache(const std::string &path,
                 const std::optional<FingerprintParams> &expected = {},
                 const std::optional<Digest> &expected_digest = {},
                 int workers = 1);

}  // namespace fragretro
