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

struct FingerprintParams {
  int nbits = 2048;
  int path_max = 7;  // bonds

  friend bool operator==(const FingerprintParams &,
                         const FingerprintParams &) = default;
};

class PatternFingerprint {
 public:
  PatternFingerprint() = default;
  explicit PatternFingerprint(int nbits)
    : nbits_(nbits), words_((nbits + 63) / 64, 0) { }

  int nbits() const { return nbits_; }

  void set_bit(int bit) { words_[bit >> 6] |= std::uint64_t { 1 } << (bit & 63); }
  bool test(int bit) const { return (words_[bit >> 6] >> (bit & 63)) & 1U; }
  int popcount() const;
  PatternFingerprint &operator|=(const PatternFingerprint &other);

  // bits(*this) AND NOT bits(other) == 0
  bool is_subset_of(const PatternFingerprint &other) const {
    for (std::size_t k = 0; k < words_.size(); ++k) {
      if ((words_[k] & ~other.words_[k]) != 0)
        return false;
    }
    return true;
  }

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  friend bool operator==(const PatternFingerprint &,
                         const PatternFingerprint &) = default;

 private:
  int nbits_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Hashed simple paths of 0..path_max bonds over internal atoms.
///
/// Each path yields up to two features. The first labels atoms by
/// element, aromatic flag and charge; it is always present. The second
/// adds ring membership and is omitted for paths through an atom whose
/// ring membership in an embedding context cannot be predicted from the
/// query (an acyclic atom where extra neighbours could close a ring).
/// For a strict match of q in t, bits(q) is a subset of bits(t).
///
/// Throws Error on nbits < 1 or path_max < 0.
PatternFingerprint fingerprint(const Molecule &m,
                               const FingerprintParams &params = {});

/// ORs into `fp` the plain-family bits of every path of `m` that uses one
/// of `bonds`. With fingerprints of two matched halves this gives the bits
/// of their merge that any match of the merge must carry.
void add_paths_through(const Molecule &m, std::span<const int> bonds,
                       const FingerprintParams &params,
                       PatternFingerprint &fp);

std::uint64_t fnv1a64(std::span<const std::uint8_t> bytes,
                      std::uint64_t seed = 14695981039346656037ULL);

}  // namespace fragretro
