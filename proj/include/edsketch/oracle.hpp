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

#ifndef EDSKETCH_ORACLE_HPP_
#define EDSKETCH_ORACLE_HPP_

#include <cstdint>
#include <vector>

#include "edsketch/common.hpp"

// Brute-force ground truth. Everything here is hashing- and sampling-free;
// compiled into all builds so the CLI can expose it for user verification.

namespace edsketch {
namespace oracle {

/// Exact edit distance by the full O(nm) table.
std::int64_t ed_exact(const TokenString& a, const TokenString& b);

/// Exact edit distance, banded: O(n * band) per pass with band doubling, so
/// cheap when the strings are close. Same answers as ed_exact.
std::int64_t ed_exact_banded(const TokenString& a, const TokenString& b);

/// Decides ed(a, b) <= threshold without computing large distances.
bool ed_at_most(const TokenString& a, const TokenString& b, std::int64_t threshold);

/// Exact LCS length by the O(nm) table.
std::int64_t lcs_exact(const TokenString& x, const TokenString& y);

/// Exhaustive minimum-cost monotone window mapping, straight from the
/// definition: sum of mapped-pair estimates plus the per-position
/// over/under-coverage penalty. Used to validate the banded DP. Guards
/// against instances with more than 16 A-windows.
struct MappingInstance {
  // a_len[i]: width of the i-th A-window (deleting it costs its width).
  std::vector<std::int64_t> a_len;
  // candidate list per A-window: (b_start, b_len, estimate); b windows are
  // indices into B, 1-based, estimate is the cost of matching.
  struct Cand {
    std::int64_t b_start, b_len;
    std::int64_t cost;
    int pool_id;  // identity of the underlying pool window, for cross-checks
  };
  std::vector<std::vector<Cand>> cands;
  std::int64_t n_b = 0;
};

std::int64_t min_mapping_exact(const MappingInstance& inst);

/// Direct evaluation of the mapping cost definition for a concrete choice
/// (index into cands per window, or -1 for bottom). Exposed for tests.
std::int64_t mapping_cost_direct(const MappingInstance& inst, const std::vector<int>& choice);

}  // namespace oracle
}  // namespace edsketch

#endif  // EDSKETCH_ORACLE_HPP_
