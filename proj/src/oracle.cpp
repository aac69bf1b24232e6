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

#include "edsketch/oracle.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace edsketch {
namespace oracle {

namespace {
constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
}

std::int64_t ed_exact(const TokenString& a, const TokenString& b) {
  const std::int64_t n = a.size(), m = b.size();
  if (n == 0) return m;
  if (m == 0) return n;
  std::vector<std::int64_t> row(static_cast<std::size_t>(m) + 1);
  for (std::int64_t j = 0; j <= m; ++j) row[static_cast<std::size_t>(j)] = j;
  for (std::int64_t i = 1; i <= n; ++i) {
    std::int64_t diag = row[0];
    row[0] = i;
    const Token ai = a.at1(i);
    for (std::int64_t j = 1; j <= m; ++j) {
      const std::int64_t up = row[static_cast<std::size_t>(j)];
      const std::int64_t left = row[static_cast<std::size_t>(j - 1)];
      std::int64_t best = diag + (ai == b.at1(j) ? 0 : 1);
      if (up + 1 < best) best = up + 1;
      if (left + 1 < best) best = left + 1;
      row[static_cast<std::size_t>(j)] = best;
      diag = up;
    }
  }
  return row[static_cast<std::size_t>(m)];
}

namespace {

// Banded pass: exact if the result is <= band, otherwise returns band+1.
std::int64_t ed_banded_pass(const TokenString& a, const TokenString& b, std::int64_t band) {
  const std::int64_t n = a.size(), m = b.size();
  if (std::llabs(n - m) > band) return band + 1;
  // row i holds D[i][j] for j in [i-band, i+band] clamped to [0, m]
  const std::int64_t width = 2 * band + 1;
  std::vector<std::int64_t> prev(static_cast<std::size_t>(width), kInf);
  std::vector<std::int64_t> cur(static_cast<std::size_t>(width), kInf);
  auto idx = [&](std::int64_t i, std::int64_t j) { return j - (i - band); };
  for (std::int64_t j = 0; j <= std::min(band, m); ++j) prev[static_cast<std::size_t>(idx(0, j))] = j;
  for (std::int64_t i = 1; i <= n; ++i) {
    std::fill(cur.begin(), cur.end(), kInf);
    const std::int64_t lo = std::max<std::int64_t>(0, i - band);
    const std::int64_t hi = std::min(m, i + band);
    const Token ai = a.at1(i);
    for (std::int64_t j = lo; j <= hi; ++j) {
      std::int64_t best = kInf;
      if (j == 0) {
        best = i;
      } else {
        const std::int64_t dd = idx(i - 1, j - 1);
        if (dd >= 0 && dd < width && prev[static_cast<std::size_t>(dd)] < kInf)
          best = prev[static_cast<std::size_t>(dd)] + (ai == b.at1(j) ? 0 : 1);
        const std::int64_t du = idx(i - 1, j);
        if (du >= 0 && du < width && prev[static_cast<std::size_t>(du)] + 1 < best)
          best = prev[static_cast<std::size_t>(du)] + 1;
        const std::int64_t dl = idx(i, j - 1);
        if (dl >= 0 && cur[static_cast<std::size_t>(dl)] + 1 < best)
          best = cur[static_cast<std::size_t>(dl)] + 1;
      }
      cur[static_cast<std::size_t>(idx(i, j))] = best;
    }
    std::swap(prev, cur);
  }
  const std::int64_t at = idx(n, m);
  if (at < 0 || at >= width) return band + 1;
  return std::min(prev[static_cast<std::size_t>(at)], band + 1);
}

}  // namespace

std::int64_t ed_exact_banded(const TokenString& a, const TokenString& b) {
  std::int64_t band = 8;
  const std::int64_t n = a.size(), m = b.size();
  for (;;) {
    const std::int64_t r = ed_banded_pass(a, b, band);
    if (r <= band) return r;
    if (band >= n + m) return r;
    band *= 2;
  }
}

bool ed_at_most(const TokenString& a, const TokenString& b, std::int64_t threshold) {
  if (threshold < 0) return false;
  return ed_banded_pass(a, b, threshold) <= threshold;
}

std::int64_t lcs_exact(const TokenString& x, const TokenString& y) {
  const std::int64_t n = x.size(), m = y.size();
  if (n == 0 || m == 0) return 0;
  std::vector<std::int32_t> row(static_cast<std::size_t>(m) + 1, 0);
  for (std::int64_t i = 1; i <= n; ++i) {
    std::int32_t diag = 0;
    const Token xi = x.at1(i);
    for (std::int64_t j = 1; j <= m; ++j) {
      const std::int32_t up = row[static_cast<std::size_t>(j)];
      const std::int32_t left = row[static_cast<std::size_t>(j - 1)];
      row[static_cast<std::size_t>(j)] =
          xi == y.at1(j) ? diag + 1 : std::max(up, left);
      diag = up;
    }
  }
  return row[static_cast<std::size_t>(m)];
}

std::int64_t mapping_cost_direct(const MappingInstance& inst, const std::vector<int>& choice) {
  std::int64_t cost = 0;
  std::vector<std::int64_t> cover(static_cast<std::size_t>(inst.n_b) + 1, 0);
  for (std::size_t i = 0; i < inst.a_len.size(); ++i) {
    const int c = choice[i];
    if (c < 0) {
      cost += inst.a_len[i];
      continue;
    }
    const auto& cd = inst.cands[i][static_cast<std::size_t>(c)];
    cost += cd.cost;
    for (std::int64_t p = cd.b_start; p < cd.b_start + cd.b_len; ++p)
      if (p >= 1 && p <= inst.n_b) ++cover[static_cast<std::size_t>(p)];
  }
  for (std::int64_t p = 1; p <= inst.n_b; ++p)
    cost += std::llabs(cover[static_cast<std::size_t>(p)] - 1);
  return cost;
}

namespace {

struct ExactSearch {
  const MappingInstance& inst;
  // memo over (window index, last matched candidate identity)
  std::unordered_map<std::uint64_t, std::int64_t> memo;

  explicit ExactSearch(const MappingInstance& in) : inst(in) {}

  static std::int64_t bridge(std::int64_t prev_end, std::int64_t start) {
    // gap inserts one penalty per uncovered position; overlap one per
    // doubly-covered position; monotone chains make this exact.
    return std::llabs(start - prev_end - 1);
  }

  std::int64_t go(std::size_t i, int last_w, int last_c, std::int64_t prev_s,
                  std::int64_t prev_e) {
    if (i == inst.a_len.size()) return inst.n_b - prev_e;  // trailing uncovered B
    const std::uint64_t key = (static_cast<std::uint64_t>(i) << 42) |
                              (static_cast<std::uint64_t>(last_w + 1) << 21) |
                              static_cast<std::uint64_t>(last_c + 1);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    // bottom: delete this window
    std::int64_t best = inst.a_len[i] + go(i + 1, last_w, last_c, prev_s, prev_e);
    const auto& cands = inst.cands[i];
    for (std::size_t c = 0; c < cands.size(); ++c) {
      const auto& cd = cands[c];
      const std::int64_t s = cd.b_start, e = cd.b_start + cd.b_len - 1;
      if (s < prev_s || e < prev_e) continue;  // monotone in starts and ends
      const std::int64_t link = bridge(prev_e, s);
      best = std::min(best, cd.cost + link +
                                go(i + 1, static_cast<int>(i), static_cast<int>(c), s, e));
    }
    memo.emplace(key, best);
    return best;
  }
};

}  // namespace

std::int64_t min_mapping_exact(const MappingInstance& inst) {
  if (inst.a_len.size() > 16) fail(Errc::kTooLarge, "min_mapping_exact capped at 16 windows");
  for (const auto& cs : inst.cands)
    if (cs.size() > 5000) fail(Errc::kTooLarge, "min_mapping_exact candidate pool too large");
  ExactSearch s(inst);
  // prev_e = 0 makes the first bridge charge the uncovered B prefix.
  return s.go(0, -1, -1, 0, 0);
}

}  // namespace oracle
}  // namespace edsketch
