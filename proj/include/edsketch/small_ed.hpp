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

#ifndef EDSKETCH_SMALL_ED_HPP_
#define EDSKETCH_SMALL_ED_HPP_

#include <cstdint>
#include <optional>

#include "edsketch/budget.hpp"
#include "edsketch/hash_sketch.hpp"
#include "edsketch/wave.hpp"

namespace edsketch {

/// A contiguous slice of a sketched string. Window-distance queries run on
/// views so one sketch of the whole string serves every window.
struct SketchView {
  const StringSketch* sk = nullptr;
  std::int64_t offset = 0;  // 0-based offset of the view
  std::int64_t len = 0;

  static SketchView whole(const StringSketch& s) { return {&s, 0, s.size()}; }

  std::uint64_t hash(std::int64_t start, std::int64_t count, QueryBudget* budget) const {
    return sk->substring_hash(offset + start, count, budget);
  }
};

/// Furthest row q >= i-1 such that A[i..q] == B[i+d..q+d]; O(log n) hash
/// comparisons by exponential doubling then bisection on the prefix hashes.
std::int64_t equal_views(const SketchView& a, const SketchView& b, std::int64_t i, std::int64_t d,
                         QueryBudget* budget = nullptr);

inline std::int64_t equal(const StringSketch& a, const StringSketch& b, std::int64_t i,
                          std::int64_t d, QueryBudget* budget = nullptr) {
  require_same_params(a, b);
  return equal_views(SketchView::whole(a), SketchView::whole(b), i, d, budget);
}

/// Exact edit distance if it is <= k, std::nullopt otherwise. At most
/// (2k+1)(k+1) Equal calls. Pass a WaveTrace to record every L^h.
std::optional<std::int64_t> ed_bounded_views(const SketchView& a, const SketchView& b,
                                             std::int64_t k, QueryBudget* budget = nullptr,
                                             WaveTrace* trace = nullptr);

inline std::optional<std::int64_t> ed_bounded(const StringSketch& a, const StringSketch& b,
                                              std::int64_t k, QueryBudget* budget = nullptr,
                                              WaveTrace* trace = nullptr) {
  require_same_params(a, b);
  return ed_bounded_views(SketchView::whole(a), SketchView::whole(b), k, budget, trace);
}

/// Tries k = 1, 2, 4, ... until the bounded query succeeds; O(ED^2 log n)
/// total. For callers that have no threshold in hand. With a positive k_cap
/// the doubling stops there and reports std::nullopt when ED exceeds it.
std::optional<std::int64_t> ed_bounded_doubling(const StringSketch& a, const StringSketch& b,
                                                QueryBudget* budget = nullptr,
                                                std::int64_t k_cap = -1);

}  // namespace edsketch

#endif  // EDSKETCH_SMALL_ED_HPP_
