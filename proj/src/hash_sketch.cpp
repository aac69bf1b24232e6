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

#include "edsketch/hash_sketch.hpp"

namespace edsketch {

std::uint64_t content_digest(const TokenString& s) {
  std::uint64_t h = 0xCBF29CE484222325ull;
  for (Token t : s.tokens) {
    for (int b = 0; b < 4; ++b) {
      h ^= (t >> (8 * b)) & 0xFF;
      h *= 0x100000001B3ull;
    }
  }
  return h;
}

StringSketch::StringSketch(const TokenString& s, HashParams params, bool embed_raw,
                           bool eager_levels)
    : params_(params), n_(s.size()), alphabet_(s.alphabet) {
  if (s.empty()) fail(Errc::kEmptyInput, "cannot sketch an empty string");
  if (params_.base < 2 || params_.base > params_.modulus - 2)
    fail(Errc::kParamError, "hash base out of range");
  build_powers();
  prefix_.resize(static_cast<std::size_t>(n_) + 1);
  prefix_[0] = 0;
  for (std::int64_t i = 1; i <= n_; ++i) {
    // +1 keeps the zero token from vanishing under multiplication.
    std::uint64_t tok = static_cast<std::uint64_t>(s.at1(i)) + 1;
    prefix_[static_cast<std::size_t>(i)] =
        addmod61(mulmod61(prefix_[static_cast<std::size_t>(i - 1)], params_.base), tok);
  }
  level_count_ = 1;
  while ((std::int64_t{1} << level_count_) <= n_) ++level_count_;
  levels_.resize(static_cast<std::size_t>(level_count_));
  if (eager_levels)
    for (int l = 0; l < level_count_; ++l) ensure_level(l);
  if (embed_raw) raw_ = s;
  string_id_ = content_digest(s);
}

void StringSketch::build_powers() {
  pow_.resize(static_cast<std::size_t>(n_) + 1);
  pow_[0] = 1;
  for (std::int64_t i = 1; i <= n_; ++i)
    pow_[static_cast<std::size_t>(i)] = mulmod61(pow_[static_cast<std::size_t>(i - 1)], params_.base);
}

void StringSketch::ensure_level(int level) const {
  Level& lv = levels_[static_cast<std::size_t>(level)];
  if (lv.built) return;
  const std::int64_t w = std::int64_t{1} << level;
  const std::int64_t count = n_ - w + 1;  // starts 1 .. n - 2^l + 1
  lv.by_pos.resize(static_cast<std::size_t>(count));
  for (std::int64_t i = 1; i <= count; ++i) {
    const std::uint64_t hi = prefix_[static_cast<std::size_t>(i + w - 1)];
    const std::uint64_t lo = prefix_[static_cast<std::size_t>(i - 1)];
    lv.by_pos[static_cast<std::size_t>(i - 1)] =
        submod61(hi, mulmod61(lo, pow_[static_cast<std::size_t>(w)]));
  }
  lv.members.reserve(lv.by_pos.size());
  lv.members.insert(lv.by_pos.begin(), lv.by_pos.end());
  lv.built = true;
}

bool StringSketch::level_contains(int level, std::uint64_t h, QueryBudget* budget) const {
  charge_hash(budget);
  if (level < 0 || level >= level_count_) fail(Errc::kLevelError, "level out of range");
  ensure_level(level);
  const Level& lv = levels_[static_cast<std::size_t>(level)];
  return lv.members.count(h) != 0;
}

const std::vector<std::uint64_t>& StringSketch::level_hashes(int level) const {
  if (level < 0 || level >= level_count_) fail(Errc::kLevelError, "level out of range");
  ensure_level(level);
  return levels_[static_cast<std::size_t>(level)].by_pos;
}

StringSketch StringSketch::from_parts(HashParams params, std::int64_t n, Alphabet alphabet,
                                      std::vector<std::uint64_t> prefix,
                                      std::optional<TokenString> raw) {
  StringSketch sk;
  sk.params_ = params;
  sk.n_ = n;
  sk.alphabet_ = alphabet;
  sk.prefix_ = std::move(prefix);
  sk.build_powers();
  sk.level_count_ = 1;
  while ((std::int64_t{1} << sk.level_count_) <= n) ++sk.level_count_;
  sk.levels_.resize(static_cast<std::size_t>(sk.level_count_));
  sk.raw_ = std::move(raw);
  sk.string_id_ = sk.raw_ ? content_digest(*sk.raw_) : 0;
  return sk;
}

StringSketch build_sketch(const TokenString& s, const HashParams& params, bool embed_raw) {
  return StringSketch(s, params, embed_raw, /*eager_levels=*/true);
}

}  // namespace edsketch
