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

#ifndef EDSKETCH_COMMON_HPP_
#define EDSKETCH_COMMON_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace edsketch {

using Token = std::uint32_t;

// Reserved for padding / out-of-range shifted positions; never a payload symbol.
inline constexpr Token kSentinelToken = 0xFFFFFFFFu;

enum class Alphabet : std::uint8_t {
  kBytes = 0,
  kUnicode = 1,
  kDna = 2,
  kInteger = 3,
};

enum class Errc {
  kEmptyInput,
  kIndexError,
  kLevelError,
  kParamMismatch,
  kNotPermutation,
  kCorruptSketch,
  kParamError,
  kDiagError,
  kTooLarge,
  kFormatError,
};

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

/// A sequence of 32-bit symbols plus an alphabet tag. Houses every input
/// string handled by the library.
struct TokenString {
  std::vector<Token> tokens;
  Alphabet alphabet = Alphabet::kBytes;

  TokenString() = default;
  explicit TokenString(std::vector<Token> t, Alphabet a = Alphabet::kBytes)
      : tokens(std::move(t)), alphabet(a) {
    for (Token tok : tokens)
      if (tok == kSentinelToken) fail(Errc::kParamError, "token collides with reserved sentinel");
  }

  static TokenString from_bytes(std::string_view s) {
    std::vector<Token> t(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) t[i] = static_cast<unsigned char>(s[i]);
    return TokenString(std::move(t), Alphabet::kBytes);
  }

  std::int64_t size() const { return static_cast<std::int64_t>(tokens.size()); }
  bool empty() const { return tokens.empty(); }
  // 1-based accessor; all paper-facing index arithmetic in this library is 1-based.
  Token at1(std::int64_t i) const { return tokens[static_cast<std::size_t>(i - 1)]; }
  bool operator==(const TokenString& o) const { return tokens == o.tokens; }
};

// splitmix64: the fixed seed-expansion step used everywhere a stream of
// 64-bit values must be derived reproducibly from a seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Derives an independent seed for a named sub-stream. Mixing the purpose tag
// through splitmix64 keeps per-(tau, level, interval) streams decoupled from
// the order in which they are drawn.
inline std::uint64_t derive_seed(std::uint64_t root, std::uint64_t a, std::uint64_t b = 0,
                                 std::uint64_t c = 0) {
  std::uint64_t s = root;
  std::uint64_t h = splitmix64(s);
  s ^= a * 0xD6E8FEB86659FD93ull;
  h ^= splitmix64(s);
  s ^= b * 0xCA5A826395121157ull;
  h ^= splitmix64(s);
  s ^= c * 0x9E3779B97F4A7C15ull;
  h ^= splitmix64(s);
  return h;
}

}  // namespace edsketch

#endif  // EDSKETCH_COMMON_HPP_
