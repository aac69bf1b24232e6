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

#ifndef EDSKETCH_ESTIMATE_HPP_
#define EDSKETCH_ESTIMATE_HPP_

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <unordered_map>
#include <vector>

#include "edsketch/budget.hpp"
#include "edsketch/hash_sketch.hpp"
#include "edsketch/small_ed.hpp"
#include "edsketch/windows.hpp"

namespace edsketch {

inline constexpr std::int64_t kInfCost = std::numeric_limits<std::int64_t>::max() / 4;

/// Thresholded edit distance between two windows, evaluated on substring
/// views of the full-string sketches.
std::optional<std::int64_t> window_ed(const StringSketch& ska, const Window& wa,
                                      const StringSketch& skb, const Window& wb,
                                      std::int64_t threshold, QueryBudget* budget = nullptr);

/// All B windows across the tau families, deduplicated by (start, len).
/// Learners and the DP address B windows by pool id.
struct BWindowPool {
  std::vector<Window> windows;                   // sorted by (start, len)
  std::vector<std::vector<int>> family_members;  // tau index -> pool ids sorted by start
  std::vector<double> taus;                      // tau value per family
  std::vector<std::int64_t> gammas;              // grid step per family
  std::int64_t n = 0;
  std::int64_t d = 0;

  static BWindowPool build(std::int64_t n, std::int64_t d, const std::vector<double>& taus,
                           double eps);
  int size() const { return static_cast<int>(windows.size()); }
};

/// Close-window graph at an absolute threshold over one window family;
/// vertices are family-local indices. Rows are computed on first use and
/// memoized, so the quadratic preprocessing cost is only paid for rows the
/// query phase actually reads. Row construction charges prep_ed_queries.
class LazyCloseGraph {
 public:
  LazyCloseGraph(const StringSketch* sk, std::vector<Window> wins, std::int64_t threshold)
      : sk_(sk), wins_(std::move(wins)), threshold_(threshold),
        rows_(wins_.size()) {}

  const std::vector<int>& row(int i, QueryBudget* budget);
  std::int64_t threshold() const { return threshold_; }
  int size() const { return static_cast<int>(wins_.size()); }
  const std::vector<Window>& windows() const { return wins_; }

  /// Forces every row; only sensible at small sizes (tests, eager mode).
  void materialize(QueryBudget* budget);

 private:
  const StringSketch* sk_;
  std::vector<Window> wins_;
  std::int64_t threshold_;
  std::vector<std::optional<std::vector<int>>> rows_;
};

/// Fully materialized close graph for one tau (test-facing mirror of the
/// paper's preprocessing output).
struct CloseGraph {
  double tau = 0.0;
  std::int64_t threshold = 0;
  std::vector<std::vector<int>> adj;
};

/// Eagerly computes G_{C, tau} for every tau in the grid.
std::vector<CloseGraph> preprocess_close_graphs(const std::vector<Window>& wins,
                                                const StringSketch& sk,
                                                const std::vector<double>& taus, std::int64_t d,
                                                QueryBudget* budget = nullptr);

/// Learned upper bounds on pairwise window distances for one tau family.
/// Direct entries hold exact thresholded distances; dense coverage is stored
/// as anchor pairs whose neighbor lists reconstruct membership at lookup.
struct EstimateMap {
  struct Anchor {
    int a_id = -1;
    int b_id = -1;                // pool id (noprep anchors sit on the B side only)
    std::int64_t value = 0;       // 7*tau*d (prep) / 3*tau*d (noprep), floored per leg
    std::vector<int> b_neighbors; // sorted pool ids covered by this anchor
  };

  int a_count = 0;
  // per a_id: (pool_id, cost), sorted and deduplicated by finalize()
  std::vector<std::vector<std::pair<int, std::int64_t>>> direct_by_a;
  std::vector<int> rep;  // a_id -> anchor index or -1
  std::vector<Anchor> anchors;

  explicit EstimateMap(int a_count_ = 0)
      : a_count(a_count_), direct_by_a(static_cast<std::size_t>(a_count_)),
        rep(static_cast<std::size_t>(a_count_), -1) {}

  void set_direct(int a_id, int pool_id, std::int64_t v) {
    direct_by_a[static_cast<std::size_t>(a_id)].emplace_back(pool_id, v);
  }

  /// Sorts each per-window list and keeps the minimum per pool id.
  void finalize();

  /// O(log n): direct entry, else the representative anchor's coverage,
  /// else infinity.
  std::int64_t lookup(int a_id, int pool_id) const;

  /// Pool ids with a finite estimate for a_id (direct plus anchor coverage).
  std::vector<int> finite_candidates(int a_id) const;
};

struct LearnStats {
  std::uint64_t queries = 0;      // window-ED queries charged to the query phase
  std::uint64_t ops_used = 0;     // proxy op units consumed (budget accounting)
  bool truncated = false;         // stopped early by the op budget
  bool dense_cap_hit = false;     // hard cap on dense runs fired
  int levels_used = 0;
  int dense_runs = 0;
};

/// Shared knobs for both learners.
struct LearnParams {
  double eps = 0.1;
  double c_s = 1.0;          // scales every "log^2 n" sample count
  std::uint64_t seed = 0;
  std::int64_t op_budget = -1;  // approximate op allowance, -1 = unlimited
};

/// Section 5.5 learner (preprocessed close graphs). graphs_a2/graphs_b4 are
/// the per-tau G_{A,2tau} and G_{B^tau,4tau}; family-local ids of graphs_b4
/// must correspond to pool->family_members[tau_index] order.
EstimateMap learn_estimates_prep(const StringSketch& ska, const StringSketch& skb,
                                 const WindowSet& awin, const BWindowPool& pool, int tau_index,
                                 double tau, std::int64_t d, LazyCloseGraph& graph_a2,
                                 LazyCloseGraph& graph_b4, const LearnParams& params,
                                 QueryBudget* budget, LearnStats* stats = nullptr);

/// Section 6 learner (no preprocessing): density estimation, iterative
/// sparsification of dense B windows, then the sparse interval recursion.
EstimateMap learn_estimates_noprep(const StringSketch& ska, const StringSketch& skb,
                                   const WindowSet& awin, const BWindowPool& pool, int tau_index,
                                   double tau, std::int64_t d, const LearnParams& params,
                                   QueryBudget* budget, LearnStats* stats = nullptr);

/// Pointwise minimum over per-tau maps (windows shared across families take
/// the best bound any family learned).
class MergedEstimate {
 public:
  MergedEstimate(const BWindowPool* pool, std::vector<const EstimateMap*> maps)
      : pool_(pool), maps_(std::move(maps)) {}

  std::int64_t lookup(int a_id, int pool_id) const {
    std::int64_t best = kInfCost;
    for (const EstimateMap* m : maps_) best = std::min(best, m->lookup(a_id, pool_id));
    return best;
  }

  std::vector<int> finite_candidates(int a_id) const;
  const BWindowPool& pool() const { return *pool_; }

 private:
  const BWindowPool* pool_;
  std::vector<const EstimateMap*> maps_;
};

}  // namespace edsketch

#endif  // EDSKETCH_ESTIMATE_HPP_
