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

#include "edsketch/window_dp.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

namespace edsketch {

std::int64_t dp_subsample_step(std::int64_t delta, std::int64_t d, std::int64_t n,
                               std::int64_t gamma_tau) {
  const std::int64_t gamma = std::max<std::int64_t>(
      1, static_cast<std::int64_t>(delta * d / std::max<std::int64_t>(n, 1)));
  return std::max<std::int64_t>(1, gamma / std::max<std::int64_t>(gamma_tau, 1));
}

std::vector<char> dp_usable_windows(const BWindowPool& pool, std::int64_t delta) {
  std::vector<char> usable(pool.windows.size(), 0);
  for (std::size_t ti = 0; ti < pool.family_members.size(); ++ti) {
    const std::int64_t gamma_tau = pool.gammas[ti];
    const std::int64_t step = dp_subsample_step(delta, pool.d, pool.n, gamma_tau);
    for (int id : pool.family_members[ti]) {
      const std::int64_t grid_idx = (pool.windows[static_cast<std::size_t>(id)].start - 1) /
                                    std::max<std::int64_t>(gamma_tau, 1);
      if (grid_idx % step == 0) usable[static_cast<std::size_t>(id)] = 1;
    }
  }
  return usable;
}

namespace {

struct State {
  std::int64_t j;     // last consumed B position
  std::int64_t cost;
  int bp_prev = -1;   // index into the previous row's states (match origin)
  int bp_pool = -1;   // matched pool window, -1 for delete-propagation
};

struct Candidate {
  int pool_id;
  std::int64_t value;
};

// Finite-estimate candidates of one A window, restricted to usable windows
// whose end lies in the row band. Direct entries come first; anchor coverage
// is thinned if it alone would blow the cap.
std::vector<Candidate> row_candidates(const MergedEstimate& E, int a_id,
                                      const std::vector<char>& usable, std::int64_t end_lo,
                                      std::int64_t end_hi, int cap, bool* thinned) {
  const BWindowPool& pool = E.pool();
  std::vector<Candidate> out;
  std::vector<int> ids = E.finite_candidates(a_id);
  // ids are sorted by pool order == (start, len); restrict by start range.
  const std::int64_t max_len = 4 * pool.d + 4;
  auto lo = std::lower_bound(ids.begin(), ids.end(), end_lo - max_len,
                             [&](int id, std::int64_t v) {
                               return pool.windows[static_cast<std::size_t>(id)].start < v;
                             });
  std::vector<int> in_band;
  for (auto it = lo; it != ids.end(); ++it) {
    const Window& w = pool.windows[static_cast<std::size_t>(*it)];
    if (w.start > end_hi) break;
    const std::int64_t e = w.end();
    if (e < end_lo || e > end_hi) continue;
    if (!usable[static_cast<std::size_t>(*it)]) continue;
    in_band.push_back(*it);
  }
  std::int64_t stride = 1;
  if (static_cast<int>(in_band.size()) > cap) {
    stride = (static_cast<std::int64_t>(in_band.size()) + cap - 1) / cap;
    if (thinned) *thinned = true;
  }
  for (std::size_t idx = 0; idx < in_band.size(); idx += static_cast<std::size_t>(stride)) {
    const int id = in_band[idx];
    out.push_back(Candidate{id, E.lookup(a_id, id)});
  }
  return out;
}

}  // namespace

std::optional<MappingCost> dp_threshold(const MergedEstimate& E, const WindowSet& awin,
                                        std::int64_t delta, const DpOptions& opt) {
  const BWindowPool& pool = E.pool();
  const std::vector<char> usable = dp_usable_windows(pool, delta);
  const std::int64_t band = 10 * delta;
  const std::int64_t cut = static_cast<std::int64_t>(
      std::ceil(10.0 * static_cast<double>(delta) * (1.0 + opt.eps)));
  const int t = static_cast<int>(awin.windows.size());

  std::vector<std::vector<State>> rows(static_cast<std::size_t>(t) + 1);
  rows[0].push_back(State{0, 0, -1, -1});

  std::vector<std::int64_t> lmin, rmin;  // prefix/suffix minima over the previous row
  std::vector<int> larg, rarg;

  std::int64_t end_r = 0;
  for (int r = 1; r <= t; ++r) {
    const auto& prev = rows[static_cast<std::size_t>(r - 1)];
    if (prev.empty()) return std::nullopt;  // every in-band path exceeded the cut
    const Window& aw = awin.windows[static_cast<std::size_t>(r - 1)];
    end_r = aw.end();
    const std::int64_t end_lo = std::max<std::int64_t>(0, end_r - band);
    const std::int64_t end_hi = std::min(opt.n_b, end_r + band);

    // Prefix/suffix minima of cost -/+ j over the previous row, for the
    // bridge min_j' cost(j') + |j' - x|.
    const std::size_t pn = prev.size();
    lmin.assign(pn, 0);
    rmin.assign(pn, 0);
    larg.assign(pn, 0);
    rarg.assign(pn, 0);
    for (std::size_t i = 0; i < pn; ++i) {
      const std::int64_t v = prev[i].cost - prev[i].j;
      if (i == 0 || v < lmin[i - 1]) {
        lmin[i] = v;
        larg[i] = static_cast<int>(i);
      } else {
        lmin[i] = lmin[i - 1];
        larg[i] = larg[i - 1];
      }
    }
    for (std::size_t i = pn; i-- > 0;) {
      const std::int64_t v = prev[i].cost + prev[i].j;
      if (i + 1 == pn || v < rmin[i + 1]) {
        rmin[i] = v;
        rarg[i] = static_cast<int>(i);
      } else {
        rmin[i] = rmin[i + 1];
        rarg[i] = rarg[i + 1];
      }
    }
    auto bridge_min = [&](std::int64_t x, int* arg) {
      // position of last prev state with j <= x
      auto it = std::upper_bound(prev.begin(), prev.end(), x,
                                 [](std::int64_t v, const State& s) { return v < s.j; });
      std::int64_t best = kInfCost;
      if (it != prev.begin()) {
        const std::size_t i = static_cast<std::size_t>(it - prev.begin()) - 1;
        best = x + lmin[i];
        *arg = larg[i];
      }
      if (it != prev.end()) {
        const std::size_t i = static_cast<std::size_t>(it - prev.begin());
        const std::int64_t v = rmin[i] - x;
        if (v < best) {
          best = v;
          *arg = rarg[i];
        }
      }
      return best;
    };

    std::vector<State> next;
    next.reserve(prev.size() + 64);
    // Delete transition: drop this A-window, keep the consumed B prefix.
    for (std::size_t i = 0; i < pn; ++i) {
      const std::int64_t c = prev[i].cost + aw.len;
      if (c > cut) continue;
      if (prev[i].j < end_lo || prev[i].j > end_hi) continue;
      next.push_back(State{prev[i].j, c, static_cast<int>(i), -1});
    }
    // Match transitions.
    for (const Candidate& cand :
         row_candidates(E, r - 1, usable, end_lo, end_hi, opt.max_row_candidates, nullptr)) {
      if (cand.value >= kInfCost) continue;
      const Window& bw = pool.windows[static_cast<std::size_t>(cand.pool_id)];
      int arg = -1;
      const std::int64_t link = bridge_min(bw.start - 1, &arg);
      if (link >= kInfCost) continue;
      const std::int64_t c = cand.value + link;
      if (c > cut) continue;
      next.push_back(State{bw.end(), c, arg, cand.pool_id});
    }
    // Sort by j; keep the cheapest per j; prune bridge-dominated states.
    std::sort(next.begin(), next.end(), [](const State& x, const State& y) {
      return x.j != y.j ? x.j < y.j : x.cost < y.cost;
    });
    std::vector<State> pruned;
    pruned.reserve(next.size());
    for (const State& s : next) {
      if (!pruned.empty() && pruned.back().j == s.j) continue;  // cheapest kept first
      // dominated from the left: some kept state reaches s.j at <= cost
      if (!pruned.empty() && pruned.back().cost + (s.j - pruned.back().j) <= s.cost) continue;
      // s may dominate earlier states from the right
      while (!pruned.empty() && pruned.back().cost >= s.cost + (s.j - pruned.back().j))
        pruned.pop_back();
      pruned.push_back(s);
    }
    rows[static_cast<std::size_t>(r)] = std::move(pruned);
  }

  const auto& last = rows[static_cast<std::size_t>(t)];
  std::int64_t best = kInfCost;
  int best_idx = -1;
  for (std::size_t i = 0; i < last.size(); ++i) {
    const std::int64_t c = last[i].cost + (opt.n_b - last[i].j);
    if (c < best) {
      best = c;
      best_idx = static_cast<int>(i);
    }
  }
  if (best_idx < 0 || best > cut) return std::nullopt;

  MappingCost mc;
  mc.value = best;
  mc.assignment.assign(static_cast<std::size_t>(t), -1);
  int idx = best_idx;
  for (int r = t; r >= 1; --r) {
    const State& s = rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(idx)];
    mc.assignment[static_cast<std::size_t>(r - 1)] = s.bp_pool;
    idx = s.bp_prev;
  }
  return mc;
}

MappingCost ed_of_estimate(const MergedEstimate& E, const WindowSet& awin, const DpOptions& opt) {
  const std::int64_t limit = 2 * std::max(opt.n_a, opt.n_b);
  std::int64_t delta = 1;
  std::int64_t prev_delta = 0;
  for (;;) {
    if (delta > limit) delta = limit;
    if (delta != prev_delta) {
      if (auto r = dp_threshold(E, awin, delta, opt)) return *r;
      prev_delta = delta;
    }
    if (delta >= limit) break;
    delta = std::max(delta + 1,
                     static_cast<std::int64_t>(std::ceil(static_cast<double>(delta) * (1.0 + opt.eps))));
  }
  // delta = 2n admits every mapping and the all-bottom fallback, so this is
  // unreachable; return the bottom-only mapping cost if it ever fires.
  MappingCost mc;
  mc.value = opt.n_a + opt.n_b;
  mc.assignment.assign(awin.windows.size(), -1);
  return mc;
}

std::int64_t mapping_cost_of(const MergedEstimate& E, const WindowSet& awin,
                             const std::vector<int>& assignment, std::int64_t n_b) {
  const BWindowPool& pool = E.pool();
  std::int64_t cost = 0;
  std::vector<std::int64_t> cover(static_cast<std::size_t>(n_b) + 1, 0);
  for (std::size_t i = 0; i < assignment.size(); ++i) {
    const int b = assignment[i];
    if (b < 0) {
      cost += awin.windows[i].len;
      continue;
    }
    cost += E.lookup(static_cast<int>(i), b);
    const Window& w = pool.windows[static_cast<std::size_t>(b)];
    for (std::int64_t p = w.start; p <= w.end() && p <= n_b; ++p)
      ++cover[static_cast<std::size_t>(p)];
  }
  for (std::int64_t p = 1; p <= n_b; ++p) cost += std::llabs(cover[static_cast<std::size_t>(p)] - 1);
  return cost;
}

}  // namespace edsketch
