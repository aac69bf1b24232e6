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

#ifndef EDSKETCH_WINDOW_DP_HPP_
#define EDSKETCH_WINDOW_DP_HPP_

#include <cstdint>
#include <optional>
#include <vector>

#include "edsketch/estimate.hpp"
#include "edsketch/windows.hpp"

namespace edsketch {

/// Result of aggregating an estimate map: the minimal monotone-mapping cost
/// and one realized mapping (per A-window pool id, -1 for bottom).
struct MappingCost {
  std::int64_t value = 0;
  std::vector<int> assignment;
};

struct DpOptions {
  std::int64_t n_a = 0;
  std::int64_t n_b = 0;
  double eps = 0.1;
  int max_row_candidates = 4096;  // per-row cap; anchors are thinned past it
};

/// Minimum cost over monotone mappings restricted to the band |i-j| <= 10*delta,
/// with B windows subsampled per family to the grid gamma = delta*d/n.
/// Returns std::nullopt (AboveThreshold) when the minimum exceeds
/// 10*delta*(1+eps).
std::optional<MappingCost> dp_threshold(const MergedEstimate& E, const WindowSet& awin,
                                        std::int64_t delta, const DpOptions& opt);

/// Smallest delta on the geometric grid {1, (1+eps), ...} <= 2n for which
/// dp_threshold succeeds; its cost and mapping.
MappingCost ed_of_estimate(const MergedEstimate& E, const WindowSet& awin, const DpOptions& opt);

/// Recomputes the cost of a concrete assignment straight from the mapping
/// cost definition (estimates plus per-position coverage penalties).
std::int64_t mapping_cost_of(const MergedEstimate& E, const WindowSet& awin,
                             const std::vector<int>& assignment, std::int64_t n_b);

/// The per-family subsample step used by dp_threshold at threshold delta,
/// exposed for tests: keep windows whose grid index is a multiple of step.
std::int64_t dp_subsample_step(std::int64_t delta, std::int64_t d, std::int64_t n,
                               std::int64_t gamma_tau);

/// Marks the pool windows that survive the delta-subsampling (a window
/// survives when any family that owns it keeps it).
std::vector<char> dp_usable_windows(const BWindowPool& pool, std::int64_t delta);

}  // namespace edsketch

#endif  // EDSKETCH_WINDOW_DP_HPP_
