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

#include "edsketch/perm_lcs.hpp"

#include <algorithm>
#include <map>

#include "edsketch/small_ed.hpp"

namespace edsketch {

PermSketch preprocess_permutation(const TokenString& p, const HashParams& params) {
  const std::int64_t n = p.size();
  if (n == 0) fail(Errc::kEmptyInput, "cannot preprocess an empty permutation");
  std::vector<std::uint32_t> inv(static_cast<std::size_t>(n), 0);
  for (std::int64_t i = 1; i <= n; ++i) {
    const Token t = p.at1(i);
    if (t < 1 || static_cast<std::int64_t>(t) > n || inv[t - 1] != 0)
      fail(Errc::kNotPermutation, "input is not a permutation of {1..n}");
    inv[t - 1] = static_cast<std::uint32_t>(i);
  }
  PermSketch ps;
  ps.sketch = StringSketch(p, params, /*embed_raw=*/true);
  ps.inv = std::move(inv);
  return ps;
}

std::vector<Block> compress(const PermSketch& sx, const PermSketch& sy, QueryBudget* budget) {
  require_same_params(sx.sketch, sy.sketch);
  const std::int64_t n = sx.size();
  if (n != sy.size()) fail(Errc::kParamMismatch, "permutations differ in length");
  const TokenString& x = sx.sketch.raw();

  std::vector<Block> blocks;
  const SketchView vx = SketchView::whole(sx.sketch);
  const SketchView vy = SketchView::whole(sy.sketch);
  std::int64_t x_start = 1;
  while (x_start <= n) {
    const Token sym = x.at1(x_start);
    if (sym < 1 || static_cast<std::int64_t>(sym) > n || sy.inv[sym - 1] == 0)
      fail(Errc::kCorruptSketch, "symbol of X missing from Y");
    const std::int64_t y_start = sy.inv[sym - 1];
    // A block starting with `sym` can only match at Y's occurrence of `sym`,
    // so the maximal extension at (x_start, y_start) is the maximal block.
    const std::int64_t end = equal_views(vx, vy, x_start, y_start - x_start, budget);
    const std::int64_t weight = std::max<std::int64_t>(1, end - x_start + 1);
    blocks.push_back(Block{x_start, y_start, weight});
    x_start += weight;
  }
  return blocks;
}

std::int64_t his(const std::vector<Block>& blocks, std::vector<Block>* chain) {
  // Pareto frontier keyed by y_start: strictly increasing in both key and
  // weight. Entries of equal weight keep the smaller y.
  struct Entry {
    std::int64_t weight;
    int block_idx;   // block that realized this entry
    int parent_idx;  // index into `entries` of its predecessor, -1 at start
  };
  std::map<std::int64_t, std::size_t> frontier;  // y_start -> entries index
  std::vector<Entry> entries;

  for (std::size_t bi = 0; bi < blocks.size(); ++bi) {
    const Block& b = blocks[bi];
    std::int64_t base = 0;
    int parent = -1;
    auto it = frontier.lower_bound(b.y_start);
    if (it != frontier.begin()) {
      auto pred = std::prev(it);
      base = entries[pred->second].weight;
      parent = static_cast<int>(pred->second);
    }
    const std::int64_t w = base + b.weight;
    // Skip if an entry at the same y already does at least as well (ties keep
    // the smaller y, so an equal-weight incumbent stays).
    if (it != frontier.end() && it->first == b.y_start && entries[it->second].weight >= w)
      continue;
    entries.push_back(Entry{w, static_cast<int>(bi), parent});
    if (it != frontier.end() && it->first == b.y_start) {
      it->second = entries.size() - 1;
      ++it;
    } else {
      it = std::next(frontier.emplace_hint(it, b.y_start, entries.size() - 1));
    }
    // Drop successors that are no longer pareto-optimal.
    while (it != frontier.end() && entries[it->second].weight <= w) it = frontier.erase(it);
  }
  if (frontier.empty()) return 0;
  const std::size_t best = frontier.rbegin()->second;
  if (chain) {
    chain->clear();
    for (int e = static_cast<int>(best); e >= 0; e = entries[static_cast<std::size_t>(e)].parent_idx)
      chain->push_back(blocks[static_cast<std::size_t>(entries[static_cast<std::size_t>(e)].block_idx)]);
    std::reverse(chain->begin(), chain->end());
  }
  return entries[best].weight;
}

std::int64_t ulam_lcs(const PermSketch& sx, const PermSketch& sy, QueryBudget* budget) {
  return his(compress(sx, sy, budget));
}

}  // namespace edsketch
