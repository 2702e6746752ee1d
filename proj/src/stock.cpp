//
// Project fragretro
// SPDX-License-Identifier: Apache-2.0
//

#include "fragretro/stock.h"

#include <openssl/evp.h>

#include <atomic>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>
#include <unordered_set>

#include "fragretro/errors.h"
#include "fragretro/parallel.h"

namespace fragretro {
namespace {

constexpr char kMagic[4] = { 'F', 'R', 'S', 'K' };
constexpr std::uint32_t kVersion = 1;
constexpr std::size_t kHeaderSize = 4 + 4 + 4 + 4 + 32 + 8;

std::string read_file(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open '" + path + "'");
  std::string data((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad())
    throw IoError("read error on '" + path + "'");
  return data;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r'))
    s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

StockEntry make_entry(std::string smiles, const FingerprintParams &params) {
  StockEntry e;
  e.molecule = parse_smiles(smiles);
  if (e.molecule.has_attachments())
    throw SyntaxError("building block contains an attachment atom");
  e.smiles = std::move(smiles);
  e.fp = fingerprint(e.molecule, params);
  e.heavy_atoms = e.molecule.heavy_atom_count();
  e.rings = e.molecule.ring_count();
  return e;
}

class Writer {
 public:
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i)
      buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i)
      buf_.push_back(static_cast<char>((v >> (8 * i)) & 0xFF));
  }
  void bytes(const void *p, std::size_t n) {
    buf_.append(static_cast<const char *>(p), n);
  }
  std::string &data() { return buf_; }

 private:
  std::string buf_;
};

class Reader {
 public:
  explicit Reader(std::string_view data): data_(data) { }

  std::uint32_t u32() {
    need(4);
    std::uint32_t v = 0;
    for (int i = 0; i < 4; ++i)
      v |= static_cast<std::uint32_t>(static_cast<unsigned char>(data_[pos_ + i]))
           << (8 * i);
    pos_ += 4;
    return v;
  }
  std::uint64_t u64() {
    need(8);
    std::uint64_t v = 0;
    for (int i = 0; i < 8; ++i)
      v |= static_cast<std::uint64_t>(static_cast<unsigned char>(data_[pos_ + i]))
           << (8 * i);
    pos_ += 8;
    return v;
  }
  std::string_view bytes(std::size_t n) {
    need(n);
    std::string_view v = data_.substr(pos_, n);
    pos_ += n;
    return v;
  }
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  void need(std::size_t n) const {
    if (data_.size() - pos_ < n)
      throw CorruptCache("stock cache is truncated");
  }

  std::string_view data_;
  std::size_t pos_ = 0;
};

std::uint64_t checksum(std::string_view data) {
  return fnv1a64({ reinterpret_cast<const std::uint8_t *>(data.data()),
                   data.size() });
}

}  // namespace

Stock::Stock(std::vector<StockEntry> entries, FingerprintParams params,
             Digest digest, int parse_failures)
  : entries_(std::move(entries)), params_(params), digest_(digest),
    parse_failures_(parse_failures) {
  for (std::size_t i = 0; i < entries_.size(); ++i)
    entries_[i].id = static_cast<int>(i);
}

Digest sha256(std::string_view data) {
  Digest d {};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), d.data(), &len, EVP_sha256(),
                 nullptr)
        != 1
      || len != d.size())
    throw Error("SHA-256 computation failed");
  return d;
}

std::string to_hex(const Digest &d) {
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (std::uint8_t b: d) {
    out.push_back(kHex[b >> 4]);
    out.push_back(kHex[b & 15]);
  }
  return out;
}

Stock build_stock_from_text(std::string_view text,
                            const FingerprintParams &params, int workers) {
  std::vector<std::string> unique;
  std::unordered_set<std::string_view> seen;
  std::size_t records = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos)
      end = text.size();
    std::string_view line = trim(text.substr(start, end - start));
    start = end + 1;
    if (line.empty() || line.front() == '#')
      continue;
    line = trim(line.substr(0, line.find('\t')));
    if (line.empty())
      continue;
    ++records;
    if (seen.insert(line).second)
      unique.emplace_back(line);
  }

  std::vector<std::optional<StockEntry>> built(unique.size());
  parallel_for(unique.size(), workers, [&](std::size_t i) {
    try {
      built[i] = make_entry(unique[i], params);
    } catch (const Error &) {
      // counted below
    }
  });

  std::vector<StockEntry> entries;
  entries.reserve(built.size());
  int failures = 0;
  for (auto &e: built) {
    if (e)
      entries.push_back(std::move(*e));
    else
      ++failures;
  }
  if (static_cast<std::size_t>(failures) * 10 > records)
    throw TooManyParseFailures(std::to_string(failures) + " of "
                               + std::to_string(records)
                               + " stock records failed to parse");
  return Stock(std::move(entries), params, sha256(text), failures);
}

Stock build_stock(const std::string &path, const FingerprintParams &params,
                  int workers) {
  return build_stock_from_text(read_file(path), params, workers);
}

void save_cache(const Stock &stock, const std::string &path) {
  Writer w;
  w.bytes(kMagic, 4);
  w.u32(kVersion);
  w.u32(static_cast<std::uint32_t>(stock.params().nbits));
  w.u32(static_cast<std::uint32_t>(stock.params().path_max));
  w.bytes(stock.source_digest().data(), stock.source_digest().size());
  w.u64(stock.entries().size());
  for (const StockEntry &e: stock.entries()) {
    w.u32(static_cast<std::uint32_t>(e.smiles.size()));
    w.bytes(e.smiles.data(), e.smiles.size());
    w.u32(static_cast<std::uint32_t>(e.heavy_atoms));
    w.u32(static_cast<std::uint32_t>(e.rings));
    for (std::uint64_t word: e.fp.words())
      w.u64(word);
  }
  w.u64(checksum(w.data()));

  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out)
    throw IoError("cannot write '" + path + "'");
  out.write(w.data().data(), static_cast<std::streamsize>(w.data().size()));
  if (!out)
    throw IoError("write error on '" + path + "'");
}

Stock load_cache(const std::string &path,
                 const std::optional<FingerprintParams> &expected,
                 const std::optional<Digest> &expected_digest, int workers) {
  const std::string data = read_file(path);
  if (data.size() < kHeaderSize + 8)
    throw CorruptCache("stock cache '" + path + "' is truncated");
  if (std::memcmp(data.data(), kMagic, 4) != 0)
    throw CacheVersionMismatch("'" + path + "' is not a stock cache");

  const std::string_view body(data.data(), data.size() - 8);
  Reader r(body);
  r.bytes(4);
  const std::uint32_t version = r.u32();
  if (version != kVersion)
    throw CacheVersionMismatch("stock cache version " + std::to_string(version)
                               + ", expected " + std::to_string(kVersion));
  {
    Reader tail(std::string_view(data).substr(data.size() - 8));
    if (tail.u64() != checksum(body))
      throw CorruptCache("stock cache '" + path + "' fails its checksum");
  }

  FingerprintParams params;
  params.nbits = static_cast<int>(r.u32());
  params.path_max = static_cast<int>(r.u32());
  if (params.nbits < 1 || params.path_max < 0)
    throw CorruptCache("stock cache has invalid fingerprint parameters");
  if (expected && *expected != params)
    throw CacheVersionMismatch(
      "stock cache built with nbits=" + std::to_string(params.nbits)
      + " path_max=" + std::to_string(params.path_max) + ", run expects nbits="
      + std::to_string(expected->nbits)
      + " path_max=" + std::to_string(expected->path_max));
  Digest digest;
  std::memcpy(digest.data(), r.bytes(32).data(), 32);
  if (expected_digest && *expected_digest != digest)
    throw CacheVersionMismatch("stock cache was built from a different source");

  const std::uint64_t count = r.u64();
  const std::size_t nwords = (static_cast<std::size_t>(params.nbits) + 63) / 64;
  struct Raw {
    std::string smiles;
    int heavy;
    int rings;
    std::vector<std::uint64_t> words;
  };
  std::vector<Raw> raw;
  for (std::uint64_t i = 0; i < count; ++i) {
    if (r.remaining() < 4)
      throw CorruptCache("stock cache is truncated");
    Raw e;
    const std::uint32_t len = r.u32();
    e.smiles = std::string(r.bytes(len));
    e.heavy = static_cast<int>(r.u32());
    e.rings = static_cast<int>(r.u32());
    e.words.resize(nwords);
    for (auto &w: e.words)
      w = r.u64();
    raw.push_back(std::move(e));
  }
  if (r.remaining() != 0)
    throw CorruptCache("stock cache has trailing bytes");

  std::vector<StockEntry> entries(raw.size());
  std::atomic<bool> bad { false };
  parallel_for(raw.size(), workers, [&](std::size_t i) {
    StockEntry &e = entries[i];
    try {
      e.molecule = parse_smiles(raw[i].smiles);
    } catch (const Error &) {
      bad = true;
      return;
    }
    e.smiles = std::move(raw[i].smiles);
    e.heavy_atoms = raw[i].heavy;
    e.rings = raw[i].rings;
    e.fp = PatternFingerprint(params.nbits);
    std::copy(raw[i].words.begin(), raw[i].words.end(), e.fp.words().begin());
    if (e.heavy_atoms != e.molecule.heavy_atom_count()
        || e.rings != e.molecule.ring_count())
      bad = true;
  });
  if (bad)
    throw CorruptCache("stock cache entry does not match its SMILES");
  return Stock(std::move(entries), params, digest);
}

}  // namespace fragretro
