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

#ifndef EDSKETCH_BUDGET_HPP_
#define EDSKETCH_BUDGET_HPP_

#include <cstdint>
#include <map>

namespace edsketch {

/// Instrumented counters for the complexity claims. Counters are monotone;
/// every pairwise window-distance evaluation and every Equal/Approx-Equal call
/// charges here. Query-phase work and (lazily evaluated) preprocessing work
/// are tracked separately so scaling regressions see only the query side.
struct QueryBudget {
  std::uint64_t hash_ops = 0;           // substring_hash + level_contains evaluations
  std::uint64_t equal_calls = 0;        // Equal / Approx-Equal invocations
  std::uint64_t probes = 0;             // sampled-table work (gap sketches)
  std::uint64_t window_ed_queries = 0;  // query-phase pairwise window distances
  std::uint64_t prep_ed_queries = 0;    // close-graph (preprocessing-side) distances
  std::map<int, std::uint64_t> per_tau; // query-phase window queries keyed by tau index

  void add(const QueryBudget& o) {
    hash_ops += o.hash_ops;
    equal_calls += o.equal_calls;
    probes += o.probes;
    window_ed_queries += o.window_ed_queries;
    prep_ed_queries += o.prep_ed_queries;
    for (const auto& [k, v] : o.per_tau) per_tau[k] += v;
  }
};

inline void charge_hash(QueryBudget* b, std::uint64_t n = 1) {
  if (b) b->hash_ops += n;
}
inline void charge_equal(QueryBudget* b) {
  if (b) ++b->equal_calls;
}
inline void charge_probe(QueryBudget* b, std::uint64_t n = 1) {
  if (b) b->probes += n;
}

}  // namespace edsketch

#endif  // EDSKETCH_BUDGET_HPP_
