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

#ifndef EDSKETCH_PERM_LCS_HPP_
#define EDSKETCH_PERM_LCS_HPP_

#include <cstdint>
#include <vector>

#include "edsketch/budget.hpp"
#include "edsketch/hash_sketch.hpp"

namespace edsketch {

/// StringSketch over a permutation of {1..n} plus the inverse index
/// (symbol -> its 1-based position).
struct PermSketch {
  StringSketch sketch;
  std::vector<std::uint32_t> inv;  // inv[symbol - 1] = position

  std::int64_t size() const { return sketch.size(); }
};

/// A maximal common block: X[x_start .. x_start+weight-1] equals
/// Y[y_start .. y_start+weight-1].
struct Block {
  std::int64_t x_start = 0;
  std::int64_t y_start = 0;
  std::int64_t weight = 0;
};

/// Validates that p is a permutation of {1..n} and builds the sketch plus the
/// inverse index; O(n log n).
PermSketch preprocess_permutation(const TokenString& p, const HashParams& params);

/// Greedy left-to-right parse of X into maximal blocks that occur in Y.
/// Blocks partition X; each is found by exponential doubling then bisection
/// on the prefix hashes, O(log n) per block.
std::vector<Block> compress(const PermSketch& sx, const PermSketch& sy,
                            QueryBudget* budget = nullptr);

/// Heaviest strictly-y_start-increasing subsequence of blocks (blocks ordered
/// by x_start), via a Pareto frontier; O(k log k). When chain is non-null it
/// receives one optimal chain.
std::int64_t his(const std::vector<Block>& blocks, std::vector<Block>* chain = nullptr);

/// Exact |LCS(X, Y)| for permutations; query time O(k log n) for
/// k = n - |LCS|.
std::int64_t ulam_lcs(const PermSketch& sx, const PermSketch& sy, QueryBudget* budget = nullptr);

}  // namespace edsketch

#endif  // EDSKETCH_PERM_LCS_HPP_
