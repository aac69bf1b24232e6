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

#ifndef EDSKETCH_DRIVER_HPP_
#define EDSKETCH_DRIVER_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <vector>

#include "edsketch/budget.hpp"
#include "edsketch/estimate.hpp"
#include "edsketch/window_dp.hpp"
#include "edsketch/windows.hpp"

namespace edsketch {

struct ApproxConfig {
  double eps = 0.1;
  double c_s = 1.0;                 // scales the "log^2 n" sample counts
  std::uint64_t seed = 0;
  double d_exponent_prep = 0.25;    // window width d = ceil(n^exponent)
  double d_exponent_noprep = 0.2;
  std::int64_t d_override = -1;     // fixed d, for experiments
  std::int64_t op_budget = -1;      // approximate query-op allowance; -1 = auto
  std::int64_t k_cap_noprep = -1;   // fast-path doubling cap; -1 = ceil(n^0.6)
  int max_row_candidates = 4096;
};

struct TauDiagnostics {
  double tau = 0.0;
  std::int64_t t_tau = 0;
  LearnStats stats;
};

struct ApproxResult {
  std::int64_t estimate = 0;
  MappingCost mapping;  // realized window mapping; empty on the fast path
  QueryBudget budget;
  std::vector<TauDiagnostics> per_tau;
  bool fast_path = false;
  std::int64_t d = 0;
};

/// Per-string preprocessing for the 7+o(1) estimator: the sketch, the window
/// decompositions for both roles, and lazily materialized close-window
/// graphs at any (tau, multiplier) the query phase asks for.
class PrepArtifacts {
 public:
  PrepArtifacts(const TokenString& s, const ApproxConfig& cfg);

  const StringSketch& sketch() const { return sketch_; }
  const WindowSet& a_windows() const { return awin_; }
  const BWindowPool& b_pool() const { return pool_; }
  const std::vector<double>& taus() const { return taus_; }
  std::int64_t d() const { return d_; }
  double eps() const { return eps_; }
  std::uint64_t seed() const { return seed_; }
  QueryBudget& prep_budget() { return prep_budget_; }

  /// G over the disjoint A-windows at threshold floor(mult * tau * d).
  LazyCloseGraph& a_graph(int tau_index, double mult);
  /// G over the tau family of B windows at threshold floor(mult * tau * d).
  LazyCloseGraph& b_graph(int tau_index, double mult);

 private:
  StringSketch sketch_;
  std::int64_t d_ = 0;
  double eps_ = 0.1;
  std::uint64_t seed_ = 0;
  std::vector<double> taus_;
  WindowSet awin_;
  BWindowPool pool_;
  QueryBudget prep_budget_;
  std::map<std::pair<int, int>, std::unique_ptr<LazyCloseGraph>> a_graphs_;  // (tau, mult)
  std::map<std::pair<int, int>, std::unique_ptr<LazyCloseGraph>> b_graphs_;
};

/// 7+o(1) approximation with preprocessing: per-tau learning over the
/// precomputed graphs, pointwise-min merge, then the threshold DP. Returns an
/// estimate in [ED, (7+O(eps)) ED] w.h.p.
ApproxResult approx_ed_prep(PrepArtifacts& a, PrepArtifacts& b, const ApproxConfig& cfg);

/// 3+o(1) approximation without preprocessing: exact small-distance fast path
/// first, then the section-6 learner per tau and the same DP.
ApproxResult approx_ed_noprep(const TokenString& a, const TokenString& b,
                              const ApproxConfig& cfg);

}  // namespace edsketch

#endif  // EDSKETCH_DRIVER_HPP_
