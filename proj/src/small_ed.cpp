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

#include "edsketch/small_ed.hpp"

#include <algorithm>

namespace edsketch {

std::int64_t equal_views(const SketchView& a, const SketchView& b, std::int64_t i, std::int64_t d,
                         QueryBudget* budget) {
  charge_equal(budget);
  const std::int64_t j = i + d;
  if (i < 1 || j < 1 || i > a.len || j > b.len) return i - 1;
  const std::int64_t max_len = std::min(a.len - i + 1, b.len - j + 1);
  if (a.hash(i, 1, budget) != b.hash(j, 1, budget)) return i - 1;
  // Exponential doubling: find the first power-of-two length that mismatches.
  std::int64_t lo = 1;  // known equal
  std::int64_t probe = 2;
  while (probe <= max_len) {
    if (a.hash(i, probe, budget) != b.hash(j, probe, budget)) break;
    lo = probe;
    probe *= 2;
  }
  std::int64_t hi = std::min(probe, max_len + 1);  // first length known/assumed unequal
  if (lo == max_len) return i - 1 + max_len;
  // Bisect in (lo, hi): invariant hash-equal at lo, unequal at hi.
  while (hi - lo > 1) {
    const std::int64_t mid = lo + (hi - lo) / 2;
    if (a.hash(i, mid, budget) == b.hash(j, mid, budget))
      lo = mid;
    else
      hi = mid;
  }
  return i - 1 + lo;
}

std::optional<std::int64_t> ed_bounded_views(const SketchView& a, const SketchView& b,
                                             std::int64_t k, QueryBudget* budget,
                                             WaveTrace* trace) {
  if (k < 0) return std::nullopt;
  if (a.len == 0 || b.len == 0) {
    const std::int64_t dist = a.len + b.len;
    return dist <= k ? std::optional<std::int64_t>(dist) : std::nullopt;
  }
  auto eq = [&](std::int64_t i, std::int64_t d) { return equal_views(a, b, i, d, budget); };
  const WaveOutcome out = run_waves(a.len, b.len, k, eq, trace);
  return out.distance;
}

std::optional<std::int64_t> ed_bounded_doubling(const StringSketch& a, const StringSketch& b,
                                                QueryBudget* budget, std::int64_t k_cap) {
  require_same_params(a, b);
  if (a.full_hash() == b.full_hash() && a.size() == b.size()) return 0;
  const std::int64_t worst = a.size() + b.size();
  for (std::int64_t k = 1;; k *= 2) {
    if (k_cap > 0 && k > k_cap) k = k_cap;
    auto r = ed_bounded(a, b, k, budget);
    if (r) return r;
    if (k_cap > 0 && k >= k_cap) return std::nullopt;
    if (k >= worst) return worst;
  }
}

}  // namespace edsketch
