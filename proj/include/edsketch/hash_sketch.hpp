// Copyright 2026 The edsketch Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EDSKETCH_HASH_SKETCH_HPP_
#define EDSKETCH_HASH_SKETCH_HPP_

#include <cstdint>
#include <memory>
#include <optional>
#include <unordered_set>
#include <vector>

#include "edsketch/budget.hpp"
#include "edsketch/common.hpp"

namespace edsketch {

// Polynomial rolling hash modulo the Mersenne prime 2^61 - 1. A single base
// subsumes the per-power-of-two tables: any substring hash is O(1) from the
// prefix array, position-independent, and two parties that share a seed
// produce exactly the same hash function.
inline constexpr std::uint64_t kHashModulus = (1ull << 61) - 1;

inline std::uint64_t mulmod61(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 x = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(x & kHashModulus);
  std::uint64_t hi = static_cast<std::uint64_t>(x >> 61);
  std::uint64_t r = lo + hi;
  if (r >= kHashModulus) r -= kHashModulus;
  return r;
}

inline std::uint64_t addmod61(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r = a + b;  // both < 2^61, no overflow
  if (r >= kHashModulus) r -= kHashModulus;
  return r;
}

inline std::uint64_t submod61(std::uint64_t a, std::uint64_t b) {
  return a >= b ? a - b : a + kHashModulus - b;
}

struct HashParams {
  std::uint64_t modulus = kHashModulus;
  std::uint64_t base = 0;
  std::uint64_t seed = 0;

  // base = 2 + splitmix64(seed) mod (modulus - 3), always in [2, modulus - 2].
  static HashParams from_seed(std::uint64_t seed) {
    std::uint64_t s = seed;
    HashParams p;
    p.seed = seed;
    p.base = 2 + splitmix64(s) % (kHashModulus - 3);
    return p;
  }

  bool operator==(const HashParams& o) const {
    return modulus == o.modulus && base == o.base && seed == o.seed;
  }
};

/// Hierarchical rolling-hash sketch of a token sequence: n+1 prefix hashes
/// plus, for every level l with 2^l <= n, the multiset of hashes of all
/// length-2^l substrings. The level tables are derivable from the prefix
/// array in O(1) per entry, so they are materialized lazily; serialization
/// stores them in position order, which keeps encoded sketches canonical.
class StringSketch {
 public:
  StringSketch() = default;

  StringSketch(const TokenString& s, HashParams params, bool embed_raw = true,
               bool eager_levels = true);

  std::int64_t size() const { return n_; }
  const HashParams& params() const { return params_; }
  Alphabet alphabet() const { return alphabet_; }
  bool has_raw() const { return raw_.has_value(); }
  const TokenString& raw() const {
    if (!raw_) fail(Errc::kCorruptSketch, "sketch does not embed raw tokens");
    return *raw_;
  }
  std::uint64_t string_id() const { return string_id_; }
  int level_count() const { return level_count_; }

  /// Position-independent hash of s[start .. start+len-1], 1-based.
  std::uint64_t substring_hash(std::int64_t start, std::int64_t len,
                               QueryBudget* budget = nullptr) const {
    charge_hash(budget);
    if (len < 1 || start < 1 || start + len - 1 > n_)
      fail(Errc::kIndexError, "substring_hash out of range");
    const std::uint64_t hi = prefix_[static_cast<std::size_t>(start + len - 1)];
    const std::uint64_t lo = prefix_[static_cast<std::size_t>(start - 1)];
    return submod61(hi, mulmod61(lo, pow_[static_cast<std::size_t>(len)]));
  }

  std::uint64_t full_hash() const { return prefix_[static_cast<std::size_t>(n_)]; }

  /// True iff h is the hash of some length-2^level substring.
  bool level_contains(int level, std::uint64_t h, QueryBudget* budget = nullptr) const;

  /// All hashes of level `level` in position order (position i holds the hash
  /// of the substring starting at i+1).
  const std::vector<std::uint64_t>& level_hashes(int level) const;

  // Serialization support (see serialize.hpp): raw access to the arrays.
  const std::vector<std::uint64_t>& prefix_array() const { return prefix_; }

  // Used by the decoder; trusts its inputs.
  static StringSketch from_parts(HashParams params, std::int64_t n, Alphabet alphabet,
                                 std::vector<std::uint64_t> prefix,
                                 std::optional<TokenString> raw);

 private:
  void build_powers();
  void ensure_level(int level) const;

  HashParams params_;
  std::int64_t n_ = 0;
  Alphabet alphabet_ = Alphabet::kBytes;
  std::vector<std::uint64_t> prefix_;  // prefix_[i] = hash of s[1..i]
  std::vector<std::uint64_t> pow_;     // pow_[i] = base^i mod p
  int level_count_ = 0;                // floor(log2 n) + 1

  struct Level {
    std::vector<std::uint64_t> by_pos;
    std::unordered_set<std::uint64_t> members;
    bool built = false;
  };
  mutable std::vector<Level> levels_;
  std::optional<TokenString> raw_;
  std::uint64_t string_id_ = 0;
};

/// Builds the sketch: n+1 prefix hashes and floor(log2 n)+1 level tables.
/// Deterministic given (s, params). Throws EmptyInput on an empty string.
StringSketch build_sketch(const TokenString& s, const HashParams& params, bool embed_raw = true);

inline void require_same_params(const StringSketch& a, const StringSketch& b) {
  if (!(a.params() == b.params()))
    fail(Errc::kParamMismatch, "sketches were built with different hash seeds");
}

/// Content digest independent of the hash seed (FNV-1a over token bytes).
std::uint64_t content_digest(const TokenString& s);

}  // namespace edsketch

#endif  // EDSKETCH_HASH_SKETCH_HPP_
