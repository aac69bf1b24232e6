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

#include "edsketch/driver.hpp"

#include <algorithm>
#include <cmath>

#include "edsketch/small_ed.hpp"

namespace edsketch {

namespace {

std::int64_t pick_d(std::int64_t n, double exponent, std::int64_t override_d) {
  if (override_d > 0) return override_d;
  return std::max<std::int64_t>(
      1, static_cast<std::int64_t>(std::ceil(std::pow(static_cast<double>(n), exponent))));
}

std::int64_t auto_op_budget(std::int64_t n) {
  const double nn = static_cast<double>(std::max<std::int64_t>(n, 16));
  return static_cast<std::int64_t>(64.0 * std::pow(nn, 1.5) * std::log(nn));
}

}  // namespace

PrepArtifacts::PrepArtifacts(const TokenString& s, const ApproxConfig& cfg)
    : sketch_(s, HashParams::from_seed(cfg.seed), /*embed_raw=*/true),
      d_(pick_d(s.size(), cfg.d_exponent_prep, cfg.d_override)),
      eps_(cfg.eps), seed_(cfg.seed) {
  taus_ = tau_grid(d_, eps_);
  awin_ = decompose_a(s.size(), d_);
  pool_ = BWindowPool::build(s.size(), d_, taus_, eps_);
}

LazyCloseGraph& PrepArtifacts::a_graph(int tau_index, double mult) {
  const auto key = std::make_pair(tau_index, static_cast<int>(mult));
  auto it = a_graphs_.find(key);
  if (it == a_graphs_.end()) {
    const std::int64_t thr = static_cast<std::int64_t>(
        std::floor(mult * taus_[static_cast<std::size_t>(tau_index)] * static_cast<double>(d_) +
                   1e-9));
    it = a_graphs_
             .emplace(key, std::make_unique<LazyCloseGraph>(&sketch_, awin_.windows, thr))
             .first;
  }
  return *it->second;
}

LazyCloseGraph& PrepArtifacts::b_graph(int tau_index, double mult) {
  const auto key = std::make_pair(tau_index, static_cast<int>(mult));
  auto it = b_graphs_.find(key);
  if (it == b_graphs_.end()) {
    const std::int64_t thr = static_cast<std::int64_t>(
        std::floor(mult * taus_[static_cast<std::size_t>(tau_index)] * static_cast<double>(d_) +
                   1e-9));
    std::vector<Window> wins;
    for (int id : pool_.family_members[static_cast<std::size_t>(tau_index)])
      wins.push_back(pool_.windows[static_cast<std::size_t>(id)]);
    it = b_graphs_.emplace(key, std::make_unique<LazyCloseGraph>(&sketch_, std::move(wins), thr))
             .first;
  }
  return *it->second;
}

ApproxResult approx_ed_prep(PrepArtifacts& a, PrepArtifacts& b, const ApproxConfig& cfg) {
  if (a.seed() != b.seed()) fail(Errc::kParamMismatch, "preprocessing seeds differ");
  if (a.d() != b.d()) fail(Errc::kParamMismatch, "window widths differ");
  if (a.eps() != b.eps()) fail(Errc::kParamMismatch, "accuracy parameters differ");

  ApproxResult res;
  res.d = a.d();
  const std::vector<double>& taus = a.taus();
  const std::int64_t n = std::max(a.sketch().size(), b.sketch().size());
  std::int64_t ops_left = cfg.op_budget > 0 ? cfg.op_budget : auto_op_budget(n);

  std::vector<EstimateMap> maps;
  maps.reserve(taus.size());
  // Ascending tau: the cheap fine-grained families are learned first, so an
  // op-budget cutoff sacrifices the coarse ones.
  for (std::size_t ti = 0; ti < taus.size(); ++ti) {
    LearnParams lp;
    lp.eps = cfg.eps;
    lp.c_s = cfg.c_s;
    lp.seed = derive_seed(cfg.seed, 0xEDA1, ti);
    lp.op_budget = ops_left;
    LearnStats stats;
    LazyCloseGraph& ga2 = a.a_graph(static_cast<int>(ti), 2.0);
    LazyCloseGraph& gb4 = b.b_graph(static_cast<int>(ti), 4.0);
    maps.push_back(learn_estimates_prep(a.sketch(), b.sketch(), a.a_windows(), b.b_pool(),
                                        static_cast<int>(ti), taus[ti], a.d(), ga2, gb4, lp,
                                        &res.budget, &stats));
    ops_left -= static_cast<std::int64_t>(stats.ops_used);
    TauDiagnostics diag;
    diag.tau = taus[ti];
    diag.t_tau = static_cast<std::int64_t>(b.b_pool().family_members[ti].size());
    diag.stats = stats;
    res.per_tau.push_back(diag);
    if (ops_left <= 0) break;
  }

  std::vector<const EstimateMap*> ptrs;
  for (const auto& m : maps) ptrs.push_back(&m);
  MergedEstimate merged(&b.b_pool(), std::move(ptrs));
  DpOptions opt;
  opt.n_a = a.sketch().size();
  opt.n_b = b.sketch().size();
  opt.eps = cfg.eps;
  opt.max_row_candidates = cfg.max_row_candidates;
  res.mapping = ed_of_estimate(merged, a.a_windows(), opt);
  res.estimate = res.mapping.value;
  return res;
}

ApproxResult approx_ed_noprep(const TokenString& a, const TokenString& b,
                              const ApproxConfig& cfg) {
  ApproxResult res;
  const std::int64_t n = std::max(a.size(), b.size());
  const HashParams params = HashParams::from_seed(cfg.seed);
  StringSketch ska(a, params, /*embed_raw=*/true);
  StringSketch skb(b, params, /*embed_raw=*/true);

  // Small distances are solved exactly; the windowed machinery only pays off
  // past the k_cap crossover.
  const std::int64_t k_cap =
      cfg.k_cap_noprep > 0
          ? cfg.k_cap_noprep
          : static_cast<std::int64_t>(std::ceil(std::pow(static_cast<double>(n), 0.6)));
  if (auto exact = ed_bounded_doubling(ska, skb, &res.budget, k_cap)) {
    res.estimate = *exact;
    res.fast_path = true;
    res.d = 0;
    return res;
  }

  const std::int64_t d = pick_d(n, cfg.d_exponent_noprep, cfg.d_override);
  res.d = d;
  const std::vector<double> taus = tau_grid(d, cfg.eps);
  const WindowSet awin = decompose_a(a.size(), d);
  const BWindowPool pool = BWindowPool::build(b.size(), d, taus, cfg.eps);
  std::int64_t ops_left = cfg.op_budget > 0
                              ? cfg.op_budget
                              : static_cast<std::int64_t>(
                                    64.0 * std::pow(static_cast<double>(n), 1.6));

  std::vector<EstimateMap> maps;
  maps.reserve(taus.size());
  for (std::size_t ti = 0; ti < taus.size(); ++ti) {
    LearnParams lp;
    lp.eps = cfg.eps;
    lp.c_s = cfg.c_s;
    lp.seed = derive_seed(cfg.seed, 0xEDA2, ti);
    lp.op_budget = ops_left;
    LearnStats stats;
    maps.push_back(learn_estimates_noprep(ska, skb, awin, pool, static_cast<int>(ti), taus[ti],
                                          d, lp, &res.budget, &stats));
    ops_left -= static_cast<std::int64_t>(stats.ops_used);
    TauDiagnostics diag;
    diag.tau = taus[ti];
    diag.t_tau = static_cast<std::int64_t>(pool.family_members[ti].size());
    diag.stats = stats;
    res.per_tau.push_back(diag);
    if (ops_left <= 0) break;
  }

  std::vector<const EstimateMap*> ptrs;
  for (const auto& m : maps) ptrs.push_back(&m);
  MergedEstimate merged(&pool, std::move(ptrs));
  DpOptions opt;
  opt.n_a = a.size();
  opt.n_b = b.size();
  opt.eps = cfg.eps;
  opt.max_row_candidates = cfg.max_row_candidates;
  res.mapping = ed_of_estimate(merged, awin, opt);
  res.estimate = res.mapping.value;
  return res;
}

}  // namespace edsketch
