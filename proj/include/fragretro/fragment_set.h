//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace fragretro {

/// Membership bitset over the initial fragments of a decomposition.
///
/// Ordering compares the sorted member lists lexicographically, so {0,2}
/// sorts before {1}.
class FragmentSet {
 public:
  FragmentSet() = default;
  FragmentSet(const FragmentSet &o)
    : universe_(o.universe_), nwords_(o.nwords_), inline_(o.inline_) {
    if (nwords_ > kInlineWords)
      heap_ = o.heap_;
  }
  FragmentSet(FragmentSet &&) noexcept = default;
  FragmentSet &operator=(const FragmentSet &o) {
    universe_ = o.universe_;
    nwords_ = o.nwords_;
    inline_ = o.inline_;
    if (nwords_ > kInlineWords)
      heap_ = o.heap_;
    return *this;
  }
  FragmentSet &operator=(FragmentSet &&) noexcept = default;

  explicit FragmentSet(int universe)
    : universe_(universe), nwords_((universe + 63) / 64) {
    if (nwords_ > kInlineWords)
      heap_.assign(nwords_, 0);
  }

  static FragmentSet singleton(int universe, int member) {
    FragmentSet s(universe);
    s.insert(member);
    return s;
  }
  static FragmentSet full(int universe) {
    FragmentSet s(universe);
    for (int i = 0; i < universe; ++i)
      s.insert(i);
    return s;
  }

  int universe() const { return universe_; }

  void insert(int i) { data()[i >> 6] |= std::uint64_t { 1 } << (i & 63); }
  void erase(int i) { data()[i >> 6] &= ~(std::uint64_t { 1 } << (i & 63)); }
  bool contains(int i) const { return (data()[i >> 6] >> (i & 63)) & 1U; }

  int size() const {
    int n = 0;
    for (std::uint64_t w: words())
      n += std::popcount(w);
    return n;
  }
  bool empty() const {
    for (std::uint64_t w: words()) {
      if (w != 0)
        return false;
    }
    return true;
  }

  // -1 when empty.
  int lowest() const {
    const auto ws = words();
    for (std::size_t k = 0; k < ws.size(); ++k) {
      if (ws[k] != 0)
        return static_cast<int>(k * 64) + std::countr_zero(ws[k]);
    }
    return -1;
  }

  std::vector<int> members() const {
    std::vector<int> out;
    const auto ws = words();
    for (std::size_t k = 0; k < ws.size(); ++k) {
      std::uint64_t w = ws[k];
      while (w != 0) {
        out.push_back(static_cast<int>(k * 64) + std::countr_zero(w));
        w &= w - 1;
      }
    }
    return out;
  }

  bool is_subset_of(const FragmentSet &other) const {
    const auto a = words(), b = other.words();
    for (std::size_t k = 0; k < a.size(); ++k) {
      if ((a[k] & ~b[k]) != 0)
        return false;
    }
    return true;
  }
  bool intersects(const FragmentSet &other) const {
    const auto a = words(), b = other.words();
    for (std::size_t k = 0; k < a.size(); ++k) {
      if ((a[k] & b[k]) != 0)
        return true;
    }
    return false;
  }

  FragmentSet operator|(const FragmentSet &other) const {
    FragmentSet r = *this;
    const auto b = other.words();
    std::uint64_t *out = r.data();
    for (std::size_t k = 0; k < b.size(); ++k)
      out[k] |= b[k];
    return r;
  }

  std::size_t hash() const {
    std::size_t h = 1469598103934665603ULL;
    for (std::uint64_t w: words())
      h = (h ^ w) * 1099511628211ULL;
    return h;
  }

  std::span<const std::uint64_t> words() const {
    return { data(), static_cast<std::size_t>(nwords_) };
  }

  friend bool operator==(const FragmentSet &a, const FragmentSet &b) {
    return std::ranges::equal(a.words(), b.words());
  }

  friend std::strong_ordering operator<=>(const FragmentSet &a,
                                          const FragmentSet &b) {
    // Lexicographic over ascending member lists: find the lowest index
    // where the sets differ; the set containing it has the smaller member
    // at that position, unless the other set has already run out.
    if (a.nwords_ == 1 && b.nwords_ == 1) {
      const std::uint64_t wa = a.inline_[0], wb = b.inline_[0];
      const std::uint64_t diff = wa ^ wb;
      if (diff == 0)
        return std::strong_ordering::equal;
      const std::uint64_t bit = diff & (~diff + 1);
      const bool in_a = (wa & bit) != 0;
      const std::uint64_t rest = (in_a ? wb : wa) & ~(bit | (bit - 1));
      if (rest == 0)
        return in_a ? std::strong_ordering::greater : std::strong_ordering::less;
      return in_a ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    const auto aw = a.words(), bw = b.words();
    const std::size_t n = std::max(aw.size(), bw.size());
    for (std::size_t k = 0; k < n; ++k) {
      const std::uint64_t wa = k < aw.size() ? aw[k] : 0;
      const std::uint64_t wb = k < bw.size() ? bw[k] : 0;
      const std::uint64_t diff = wa ^ wb;
      if (diff == 0)
        continue;
      const std::uint64_t bit = diff & (~diff + 1);
      const bool in_a = (wa & bit) != 0;
      // The set without this element continues with a larger member, or
      // ends. Ending means it is a prefix, hence smaller.
      const auto other = in_a ? bw : aw;
      const int pos = static_cast<int>(k * 64) + std::countr_zero(bit);
      bool other_has_more = false;
      for (std::size_t j = k; j < other.size() && !other_has_more; ++j) {
        std::uint64_t w = other[j];
        if (j == k)
          w &= pos % 64 == 63 ? 0 : ~((std::uint64_t { 2 } << (pos % 64)) - 1);
        other_has_more = w != 0;
      }
      if (!other_has_more)
        return in_a ? std::strong_ordering::greater : std::strong_ordering::less;
      return in_a ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
  }

 private:
  static constexpr int kInlineWords = 2;

  std::uint64_t *data() { return nwords_ > kInlineWords ? heap_.data() : inline_.data(); }
  const std::uint64_t *data() const {
    return nwords_ > kInlineWords ? heap_.data() : inline_.data();
  }

  int universe_ = 0;
  int nwords_ = 0;
  std::array<std::uint64_t, kInlineWords> inline_ {};
  std::vector<std::uint64_t> heap_;
};

struct FragmentSetHash {
  std::size_t operator()(const FragmentSet &s) const { return s.hash(); }
};

}  // namespace fragretro
