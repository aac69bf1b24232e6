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

#include "edsketch/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>

namespace edsketch {

std::optional<std::int64_t> window_ed(const StringSketch& ska, const Window& wa,
                                      const StringSketch& skb, const Window& wb,
                                      std::int64_t threshold, QueryBudget* budget) {
  SketchView va{&ska, wa.start - 1, wa.len};
  SketchView vb{&skb, wb.start - 1, wb.len};
  return ed_bounded_views(va, vb, threshold, budget);
}

BWindowPool BWindowPool::build(std::int64_t n, std::int64_t d, const std::vector<double>& taus,
                               double eps) {
  BWindowPool pool;
  pool.taus = taus;
  pool.n = n;
  pool.d = d;
  pool.gammas.reserve(taus.size());
  for (double tau : taus) pool.gammas.push_back(b_family_shape(d, tau, eps).gamma);
  std::map<std::pair<std::int64_t, std::int64_t>, int> ids;
  pool.family_members.resize(taus.size());
  // First pass: collect distinct (start, len); ids must end up sorted by
  // (start, len) so pool order equals positional order.
  std::vector<std::vector<std::pair<std::int64_t, std::int64_t>>> per_family(taus.size());
  for (std::size_t ti = 0; ti < taus.size(); ++ti) {
    WindowSet ws = decompose_b(n, d, taus[ti], eps, static_cast<int>(ti));
    per_family[ti].reserve(ws.windows.size());
    for (const Window& w : ws.windows) {
      ids.emplace(std::make_pair(w.start, w.len), 0);
      per_family[ti].emplace_back(w.start, w.len);
    }
  }
  int next = 0;
  pool.windows.reserve(ids.size());
  for (auto& [key, id] : ids) {
    id = next++;
    Window w;
    w.start = key.first;
    w.len = key.second;
    w.source = WindowSource::kB;
    pool.windows.push_back(w);
  }
  for (std::size_t ti = 0; ti < taus.size(); ++ti) {
    auto& members = pool.family_members[ti];
    members.reserve(per_family[ti].size());
    for (const auto& key : per_family[ti]) members.push_back(ids[key]);
    std::sort(members.begin(), members.end());
  }
  return pool;
}

const std::vector<int>& LazyCloseGraph::row(int i, QueryBudget* budget) {
  auto& slot = rows_[static_cast<std::size_t>(i)];
  if (!slot) {
    std::vector<int> r;
    for (int j = 0; j < size(); ++j) {
      if (budget) ++budget->prep_ed_queries;
      if (window_ed(*sk_, wins_[static_cast<std::size_t>(i)], *sk_,
                    wins_[static_cast<std::size_t>(j)], threshold_, budget))
        r.push_back(j);
    }
    slot = std::move(r);
  }
  return *slot;
}

void LazyCloseGraph::materialize(QueryBudget* budget) {
  for (int i = 0; i < size(); ++i) row(i, budget);
}

std::vector<CloseGraph> preprocess_close_graphs(const std::vector<Window>& wins,
                                                const StringSketch& sk,
                                                const std::vector<double>& taus, std::int64_t d,
                                                QueryBudget* budget) {
  std::vector<CloseGraph> graphs;
  graphs.reserve(taus.size());
  for (double tau : taus) {
    CloseGraph g;
    g.tau = tau;
    g.threshold = static_cast<std::int64_t>(std::floor(tau * static_cast<double>(d) + 1e-9));
    LazyCloseGraph lazy(&sk, wins, g.threshold);
    lazy.materialize(budget);
    g.adj.resize(wins.size());
    for (int i = 0; i < lazy.size(); ++i) {
      g.adj[static_cast<std::size_t>(i)] = lazy.row(i, budget);
      // drop the self loop for the test-facing adjacency
      auto& r = g.adj[static_cast<std::size_t>(i)];
      r.erase(std::remove(r.begin(), r.end(), i), r.end());
    }
    graphs.push_back(std::move(g));
  }
  return graphs;
}

void EstimateMap::finalize() {
  for (auto& list : direct_by_a) {
    std::sort(list.begin(), list.end());
    std::vector<std::pair<int, std::int64_t>> out;
    out.reserve(list.size());
    for (const auto& e : list) {
      if (!out.empty() && out.back().first == e.first)
        out.back().second = std::min(out.back().second, e.second);
      else
        out.push_back(e);
    }
    list = std::move(out);
  }
}

std::int64_t EstimateMap::lookup(int a_id, int pool_id) const {
  std::int64_t best = kInfCost;
  const auto& list = direct_by_a[static_cast<std::size_t>(a_id)];
  auto it = std::lower_bound(list.begin(), list.end(), std::make_pair(pool_id, std::int64_t{0}));
  if (it != list.end() && it->first == pool_id) best = it->second;
  const int anchor_idx = rep[static_cast<std::size_t>(a_id)];
  if (anchor_idx >= 0) {
    const Anchor& an = anchors[static_cast<std::size_t>(anchor_idx)];
    if (std::binary_search(an.b_neighbors.begin(), an.b_neighbors.end(), pool_id))
      best = std::min(best, an.value);
  }
  return best;
}

std::vector<int> EstimateMap::finite_candidates(int a_id) const {
  std::vector<int> out;
  for (const auto& e : direct_by_a[static_cast<std::size_t>(a_id)]) out.push_back(e.first);
  const int anchor_idx = rep[static_cast<std::size_t>(a_id)];
  if (anchor_idx >= 0) {
    const auto& nb = anchors[static_cast<std::size_t>(anchor_idx)].b_neighbors;
    std::vector<int> merged;
    merged.reserve(out.size() + nb.size());
    std::set_union(out.begin(), out.end(), nb.begin(), nb.end(), std::back_inserter(merged));
    out = std::move(merged);
  }
  return out;
}

std::vector<int> MergedEstimate::finite_candidates(int a_id) const {
  std::vector<int> out;
  for (const EstimateMap* m : maps_) {
    std::vector<int> c = m->finite_candidates(a_id);
    std::vector<int> merged;
    merged.reserve(out.size() + c.size());
    std::set_union(out.begin(), out.end(), c.begin(), c.end(), std::back_inserter(merged));
    out = std::move(merged);
  }
  return out;
}

namespace {

std::int64_t floor_thr(double tau, std::int64_t d) {
  return static_cast<std::int64_t>(std::floor(tau * static_cast<double>(d) + 1e-9));
}

double tpow(std::int64_t t, double e) { return std::pow(static_cast<double>(t), e); }

std::int64_t sample_count(double c_s, std::int64_t n) {
  const double ln_n = std::log(static_cast<double>(std::max<std::int64_t>(n, 3)));
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(c_s * ln_n * ln_n)));
}

// Family members within a start-position range, as sorted pool ids.
struct FamilyIndex {
  const std::vector<int>* ids;
  std::vector<std::int64_t> starts;  // parallel to ids

  FamilyIndex(const BWindowPool& pool, int tau_index) {
    ids = &pool.family_members[static_cast<std::size_t>(tau_index)];
    starts.reserve(ids->size());
    for (int id : *ids) starts.push_back(pool.windows[static_cast<std::size_t>(id)].start);
  }

  void append_range(std::int64_t lo, std::int64_t hi, std::vector<int>& out) const {
    auto b = std::lower_bound(starts.begin(), starts.end(), lo) - starts.begin();
    auto e = std::upper_bound(starts.begin(), starts.end(), hi) - starts.begin();
    for (auto i = b; i < e; ++i) out.push_back((*ids)[static_cast<std::size_t>(i)]);
  }
};

// Shared scaffolding for both learners: query plumbing, op accounting,
// coverage bookkeeping.
struct LearnerBase {
  const StringSketch& ska;
  const StringSketch& skb;
  const WindowSet& awin;
  const BWindowPool& pool;
  int tau_index;
  double tau;
  std::int64_t d;
  LearnParams params;
  QueryBudget* budget;
  LearnStats stats;

  std::int64_t thr;
  std::int64_t l2;  // the "log^2 n" sample count
  int t_a;
  const std::vector<int>* fam;
  std::int64_t t_tau;
  EstimateMap E;
  std::vector<char> covered;
  std::int64_t ops_left;
  bool out_of_ops = false;

  LearnerBase(const StringSketch& ska_, const StringSketch& skb_, const WindowSet& awin_,
              const BWindowPool& pool_, int tau_index_, double tau_, std::int64_t d_,
              const LearnParams& params_, QueryBudget* budget_)
      : ska(ska_), skb(skb_), awin(awin_), pool(pool_), tau_index(tau_index_), tau(tau_), d(d_),
        params(params_), budget(budget_), thr(floor_thr(tau_, d_)),
        l2(sample_count(params_.c_s, ska_.size())),
        t_a(static_cast<int>(awin_.windows.size())),
        fam(&pool_.family_members[static_cast<std::size_t>(tau_index_)]),
        t_tau(static_cast<std::int64_t>(fam->size())), E(t_a),
        covered(static_cast<std::size_t>(t_a), 0),
        ops_left(params_.op_budget < 0 ? kInfCost : params_.op_budget) {}

  const Window& a_window(int a) const { return awin.windows[static_cast<std::size_t>(a)]; }
  const Window& b_window(int pool_id) const {
    return pool.windows[static_cast<std::size_t>(pool_id)];
  }

  void charge_ops(std::int64_t units) {
    ops_left -= units;
    stats.ops_used += static_cast<std::uint64_t>(units);
    if (ops_left <= 0) {
      out_of_ops = true;
      stats.truncated = true;
    }
  }

  // A-to-B thresholded distance, charged to the query phase.
  std::optional<std::int64_t> query_ab(int a, int pool_id) {
    ++stats.queries;
    if (budget) {
      ++budget->window_ed_queries;
      ++budget->per_tau[tau_index];
    }
    charge_ops(1 + (thr + 1) * (thr + 1));
    return window_ed(ska, a_window(a), skb, b_window(pool_id), thr, budget);
  }

  // B-to-B thresholded distance (noprep sparsification), same charging.
  std::optional<std::int64_t> query_bb(int pool_u, int pool_v, std::int64_t threshold) {
    ++stats.queries;
    if (budget) {
      ++budget->window_ed_queries;
      ++budget->per_tau[tau_index];
    }
    charge_ops(1 + (threshold + 1) * (threshold + 1));
    return window_ed(skb, b_window(pool_u), skb, b_window(pool_v), threshold, budget);
  }

  void exhaust(int a, const std::vector<int>& candidates) {
    for (int b : candidates) {
      if (out_of_ops) return;
      if (auto q = query_ab(a, b)) E.set_direct(a, b, *q);
    }
    covered[static_cast<std::size_t>(a)] = 1;
  }

  std::mt19937_64 stream(std::uint64_t a, std::uint64_t b = 0, std::uint64_t c = 0) const {
    return std::mt19937_64(
        derive_seed(params.seed, static_cast<std::uint64_t>(tau_index) * 1315423911u + a, b, c));
  }
};

// Section 5.5: intervals, seed sampling, dense anchors via precomputed
// graphs, sparse samples narrowing the relevant windows, recursion.
struct PrepLearner : LearnerBase {
  LazyCloseGraph& graph_a2;
  LazyCloseGraph& graph_b4;
  FamilyIndex findex;
  std::int64_t dense_cap;

  struct Interval {
    int lo, hi;  // A-window index range [lo, hi)
    std::shared_ptr<const std::vector<int>> relevant;
  };

  PrepLearner(const StringSketch& ska_, const StringSketch& skb_, const WindowSet& awin_,
              const BWindowPool& pool_, int tau_index_, double tau_, std::int64_t d_,
              LazyCloseGraph& ga2, LazyCloseGraph& gb4, const LearnParams& params_,
              QueryBudget* budget_)
      : LearnerBase(ska_, skb_, awin_, pool_, tau_index_, tau_, d_, params_, budget_),
        graph_a2(ga2), graph_b4(gb4), findex(pool_, tau_index_),
        dense_cap(std::max<std::int64_t>(1, 2 * static_cast<std::int64_t>(
                                                  std::ceil(tpow(t_tau, 2.0 / 3.0))))) {}

  int fam_local(int pool_id) const {
    auto it = std::lower_bound(fam->begin(), fam->end(), pool_id);
    return static_cast<int>(it - fam->begin());
  }

  void add_anchor(int a, int b0, std::int64_t dist0) {
    ++stats.dense_runs;
    const std::vector<int>& na2 = graph_a2.row(a, budget);
    const std::vector<int>& nb4_local = graph_b4.row(fam_local(b0), budget);
    EstimateMap::Anchor an;
    an.a_id = a;
    an.b_id = b0;
    // floor per leg: ED(a',b') <= 2*tau*d + tau*d + 4*tau*d
    an.value = floor_thr(2 * tau, d) + thr + floor_thr(4 * tau, d);
    an.b_neighbors.reserve(nb4_local.size());
    for (int j : nb4_local) an.b_neighbors.push_back((*fam)[static_cast<std::size_t>(j)]);
    E.anchors.push_back(std::move(an));
    const int anchor_idx = static_cast<int>(E.anchors.size()) - 1;
    E.set_direct(a, b0, dist0);
    for (int ap : na2) {
      if (!covered[static_cast<std::size_t>(ap)]) covered[static_cast<std::size_t>(ap)] = 1;
      if (E.rep[static_cast<std::size_t>(ap)] < 0) E.rep[static_cast<std::size_t>(ap)] = anchor_idx;
    }
    covered[static_cast<std::size_t>(a)] = 1;
  }

  // Degree test against the relevant set; returns the first discovered
  // neighbor when the verdict is dense.
  bool degree_test(int a, const std::vector<int>& relevant, std::mt19937_64& rng, int* first_b,
                   std::int64_t* first_dist) {
    const std::int64_t nominal =
        std::max<std::int64_t>(1, static_cast<std::int64_t>(std::ceil(tpow(t_tau, 2.0 / 3.0))) * l2);
    const std::int64_t m = std::min<std::int64_t>(nominal, static_cast<std::int64_t>(relevant.size()));
    const std::int64_t vote = std::max<std::int64_t>(
        1, static_cast<std::int64_t>(std::ceil(static_cast<double>(l2) / 2.0 *
                                               static_cast<double>(m) / static_cast<double>(nominal))));
    std::int64_t hits = 0;
    *first_b = -1;
    for (std::int64_t s = 0; s < m; ++s) {
      if (out_of_ops) return false;
      const int b = relevant[rng() % relevant.size()];
      if (auto q = query_ab(a, b)) {
        if (*first_b < 0) {
          *first_b = b;
          *first_dist = *q;
        }
        if (++hits >= vote) return true;
      }
    }
    return false;
  }

  void process_interval(const Interval& iv, int level, int max_level,
                        std::vector<Interval>& next) {
    std::vector<int> uncovered;
    for (int a = iv.lo; a < iv.hi; ++a)
      if (!covered[static_cast<std::size_t>(a)]) uncovered.push_back(a);
    if (uncovered.empty()) return;
    const std::vector<int>& relevant = *iv.relevant;
    if (relevant.empty()) {
      for (int a : uncovered) covered[static_cast<std::size_t>(a)] = 1;
      return;
    }
    const bool last_level = level >= max_level;
    if (static_cast<std::int64_t>(uncovered.size()) <= l2 ||
        static_cast<std::int64_t>(relevant.size()) <= l2 || last_level || out_of_ops) {
      for (int a : uncovered) {
        if (out_of_ops) return;
        exhaust(a, relevant);
      }
      return;
    }

    // Step B: sample seeds in a shuffled order; classify on the fly.
    std::mt19937_64 rng = stream(0xB, static_cast<std::uint64_t>(level),
                                 static_cast<std::uint64_t>(iv.lo));
    std::vector<int> order = uncovered;
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<int> sparse_list;
    std::int64_t consec_covered = 0, consec_sparse_or_covered = 0, sparse_seen = 0;
    const std::size_t max_iters = 3 * order.size() + 10 * static_cast<std::size_t>(l2);
    for (std::size_t step = 0; step < max_iters; ++step) {
      if (out_of_ops) break;
      const int a = order[step % order.size()];
      if (covered[static_cast<std::size_t>(a)]) {
        ++consec_covered;
        ++consec_sparse_or_covered;
      } else {
        int b0 = -1;
        std::int64_t dist0 = 0;
        const bool dense = degree_test(a, relevant, rng, &b0, &dist0);
        if (dense) {
          if (stats.dense_runs >= dense_cap) {
            stats.dense_cap_hit = true;
            for (int u : uncovered)
              if (!covered[static_cast<std::size_t>(u)]) exhaust(u, relevant);
            return;
          }
          add_anchor(a, b0, dist0);
          consec_covered = 0;
          consec_sparse_or_covered = 0;
        } else {
          sparse_list.push_back(a);
          ++sparse_seen;
          consec_covered = 0;
          ++consec_sparse_or_covered;
        }
      }
      if (sparse_seen < l2 ? consec_covered >= l2 : consec_sparse_or_covered >= l2) break;
    }

    // Step D: random sparse samples reveal the relevant B range.
    std::vector<int> sparse_alive;
    for (int a : sparse_list)
      if (!covered[static_cast<std::size_t>(a)]) sparse_alive.push_back(a);
    std::shuffle(sparse_alive.begin(), sparse_alive.end(), rng);
    if (static_cast<std::int64_t>(sparse_alive.size()) > l2)
      sparse_alive.resize(static_cast<std::size_t>(l2));
    std::vector<int> neighbors_found;
    for (int a : sparse_alive) {
      if (out_of_ops) return;
      for (int b : relevant) {
        if (out_of_ops) return;
        if (auto q = query_ab(a, b)) {
          E.set_direct(a, b, *q);
          neighbors_found.push_back(b);
        }
      }
      covered[static_cast<std::size_t>(a)] = 1;
    }

    std::shared_ptr<const std::vector<int>> child_relevant = iv.relevant;
    if (!neighbors_found.empty()) {
      // Low-skew mappings keep the whole A-interval within a 1/eps-expansion
      // around any matched neighbor.
      const std::int64_t span = static_cast<std::int64_t>(iv.hi - iv.lo) * d;
      const std::int64_t hw =
          static_cast<std::int64_t>(std::ceil(static_cast<double>(span) / params.eps));
      std::vector<int> in_range;
      for (int b : neighbors_found) {
        const std::int64_t s = b_window(b).start;
        findex.append_range(s - hw, s + hw, in_range);
      }
      std::sort(in_range.begin(), in_range.end());
      in_range.erase(std::unique(in_range.begin(), in_range.end()), in_range.end());
      std::vector<int> narrowed;
      std::set_intersection(relevant.begin(), relevant.end(), in_range.begin(), in_range.end(),
                            std::back_inserter(narrowed));
      child_relevant = std::make_shared<const std::vector<int>>(std::move(narrowed));
    }

    // Split for the next level: interval count grows by ~t_tau^eps.
    const double cur_count = tpow(t_tau, 1.0 / 3.0 + (level + 1) * params.eps);
    const double next_count = tpow(t_tau, 1.0 / 3.0 + (level + 2) * params.eps);
    const int split = std::max(2, static_cast<int>(std::ceil(next_count / cur_count)));
    const int width = std::max(1, (iv.hi - iv.lo + split - 1) / split);
    for (int lo = iv.lo; lo < iv.hi; lo += width)
      next.push_back(Interval{lo, std::min(iv.hi, lo + width), child_relevant});
  }

  void run() {
    // Degenerate scale: when t_tau^(1/3) cannot beat the sample count the
    // classification machinery has no headroom; enumerate instead.
    if (tpow(t_tau, 1.0 / 3.0) < static_cast<double>(l2) || t_tau <= 4 * l2) {
      for (int a = 0; a < t_a && !out_of_ops; ++a) exhaust(a, *fam);
      E.finalize();
      return;
    }
    const int max_level = static_cast<int>(std::ceil(1.0 / params.eps)) + 1;
    std::vector<Interval> intervals;
    const auto all = std::make_shared<const std::vector<int>>(*fam);
    const int count0 = std::max(
        1, static_cast<int>(std::ceil(tpow(t_tau, 1.0 / 3.0 + params.eps))));
    const int width0 = std::max(1, (t_a + count0 - 1) / count0);
    for (int lo = 0; lo < t_a; lo += width0)
      intervals.push_back(Interval{lo, std::min(t_a, lo + width0), all});
    for (int level = 0; level <= max_level && !intervals.empty(); ++level) {
      stats.levels_used = level + 1;
      std::vector<Interval> next;
      for (const Interval& iv : intervals) process_interval(iv, level, max_level, next);
      intervals = std::move(next);
      if (out_of_ops) break;
    }
    E.finalize();
  }
};

// Section 6: on-the-fly density classification, iterative sparsification of
// dense B windows, then the interval recursion on the sparse remainder.
struct NoprepLearner : LearnerBase {
  FamilyIndex findex;

  NoprepLearner(const StringSketch& ska_, const StringSketch& skb_, const WindowSet& awin_,
                const BWindowPool& pool_, int tau_index_, double tau_, std::int64_t d_,
                const LearnParams& params_, QueryBudget* budget_)
      : LearnerBase(ska_, skb_, awin_, pool_, tau_index_, tau_, d_, params_, budget_),
        findex(pool_, tau_index_) {}

  void add_anchor_noprep(int b0, const std::vector<int>& a_bad,
                         std::vector<int>* newly_covered) {
    ++stats.dense_runs;
    EstimateMap::Anchor an;
    an.a_id = -1;
    an.b_id = b0;
    an.value = thr + floor_thr(2 * tau, d);  // ED(a',b) + ED(b,b')
    for (int v : *fam) {
      if (out_of_ops) break;
      if (query_bb(b0, v, floor_thr(2 * tau, d))) an.b_neighbors.push_back(v);
    }
    std::sort(an.b_neighbors.begin(), an.b_neighbors.end());
    E.anchors.push_back(std::move(an));
    const int anchor_idx = static_cast<int>(E.anchors.size()) - 1;
    for (int a : a_bad) {
      if (out_of_ops) break;
      if (auto q = query_ab(a, b0)) {
        E.set_direct(a, b0, *q);
        covered[static_cast<std::size_t>(a)] = 1;
        if (E.rep[static_cast<std::size_t>(a)] < 0) E.rep[static_cast<std::size_t>(a)] = anchor_idx;
        newly_covered->push_back(a);
      }
    }
  }

  void run() {
    if (tpow(t_tau, 1.0 / 2.0) < static_cast<double>(l2) || t_tau <= 4 * l2) {
      for (int a = 0; a < t_a && !out_of_ops; ++a) exhaust(a, *fam);
      E.finalize();
      return;
    }

    // Step A: classify every A window by sampling B^tau.
    std::vector<int> a_bad, a_sparse;
    {
      std::mt19937_64 rng = stream(0xA);
      const std::int64_t nominal = std::max<std::int64_t>(
          1, static_cast<std::int64_t>(std::ceil(tpow(t_tau, 0.5 - params.eps))) * l2);
      const std::int64_t m = std::min<std::int64_t>(nominal, t_tau);
      const std::int64_t vote = std::max<std::int64_t>(
          1, static_cast<std::int64_t>(std::ceil(static_cast<double>(l2) / 2.0 *
                                                 static_cast<double>(m) /
                                                 static_cast<double>(nominal))));
      for (int a = 0; a < t_a; ++a) {
        if (out_of_ops) break;
        std::int64_t hits = 0;
        bool dense = false;
        for (std::int64_t s = 0; s < m && !out_of_ops; ++s) {
          const int b = (*fam)[rng() % fam->size()];
          if (query_ab(a, b) && ++hits >= vote) {
            dense = true;
            break;
          }
        }
        (dense ? a_bad : a_sparse).push_back(a);
      }
    }

    // Sparsification: iterate over B windows, covering A_Bad through dense
    // B anchors; the degree threshold decays by t_tau^eps per iteration.
    const int g_max = static_cast<int>(std::ceil(1.0 / params.eps)) + 1;
    std::vector<char> b_dense(pool.windows.size(), 0);
    std::mt19937_64 rng_b = stream(0xBB);
    for (int g = 1; g <= g_max && !a_bad.empty() && !out_of_ops; ++g) {
      if (static_cast<double>(a_bad.size()) <= tpow(t_tau, 0.5)) break;
      const double deg_g = tpow(t_tau, 0.5 - (g - 1) * params.eps);
      for (int b : *fam) {
        if (out_of_ops || a_bad.empty()) break;
        if (static_cast<double>(a_bad.size()) <= tpow(t_tau, 0.5)) break;
        if (b_dense[static_cast<std::size_t>(b)]) continue;
        const std::int64_t nominal = std::max<std::int64_t>(
            1, static_cast<std::int64_t>(
                   std::ceil(static_cast<double>(a_bad.size()) * static_cast<double>(l2) / deg_g)));
        const std::int64_t m = std::min<std::int64_t>(nominal,
                                                      static_cast<std::int64_t>(a_bad.size()));
        const std::int64_t vote = std::max<std::int64_t>(
            1, static_cast<std::int64_t>(std::ceil(static_cast<double>(l2) / 2.0 *
                                                   static_cast<double>(m) /
                                                   static_cast<double>(nominal))));
        std::int64_t hits = 0;
        bool dense = false;
        for (std::int64_t s = 0; s < m && !out_of_ops; ++s) {
          const int a = a_bad[rng_b() % a_bad.size()];
          if (query_ab(a, b) && ++hits >= vote) {
            dense = true;
            break;
          }
        }
        if (!dense) continue;
        b_dense[static_cast<std::size_t>(b)] = 1;
        std::vector<int> newly_covered;
        add_anchor_noprep(b, a_bad, &newly_covered);
        if (!newly_covered.empty()) {
          std::vector<int> rest;
          rest.reserve(a_bad.size());
          for (int a : a_bad)
            if (!covered[static_cast<std::size_t>(a)]) rest.push_back(a);
          a_bad = std::move(rest);
        }
      }
    }
    // Exhaust whatever is left of A_Bad.
    for (int a : a_bad) {
      if (out_of_ops) break;
      if (!covered[static_cast<std::size_t>(a)]) exhaust(a, *fam);
    }

    // Step C: interval recursion on the sparse windows.
    const int max_level = static_cast<int>(std::ceil(1.0 / params.eps)) + 1;
    struct Interval {
      int lo, hi;
      std::shared_ptr<const std::vector<int>> relevant;
    };
    std::vector<Interval> intervals;
    const auto all = std::make_shared<const std::vector<int>>(*fam);
    const int count0 =
        std::max(1, static_cast<int>(std::ceil(tpow(t_tau, 0.5 + 2 * params.eps))));
    const int width0 = std::max(1, (t_a + count0 - 1) / count0);
    for (int lo = 0; lo < t_a; lo += width0)
      intervals.push_back(Interval{lo, std::min(t_a, lo + width0), all});

    for (int level = 0; level <= max_level && !intervals.empty() && !out_of_ops; ++level) {
      stats.levels_used = level + 1;
      std::vector<Interval> next;
      for (const Interval& iv : intervals) {
        std::vector<int> sparse_here;
        for (int a = iv.lo; a < iv.hi; ++a)
          if (!covered[static_cast<std::size_t>(a)] &&
              std::binary_search(a_sparse.begin(), a_sparse.end(), a))
            sparse_here.push_back(a);
        if (sparse_here.empty()) continue;
        const std::vector<int>& relevant = *iv.relevant;
        if (relevant.empty()) {
          for (int a : sparse_here) covered[static_cast<std::size_t>(a)] = 1;
          continue;
        }
        if (static_cast<std::int64_t>(sparse_here.size()) <= l2 ||
            static_cast<std::int64_t>(relevant.size()) <= l2 || level >= max_level || out_of_ops) {
          for (int a : sparse_here) {
            if (out_of_ops) break;
            exhaust(a, relevant);
          }
          continue;
        }
        std::mt19937_64 rng = stream(0xC, static_cast<std::uint64_t>(level),
                                     static_cast<std::uint64_t>(iv.lo));
        std::vector<int> sample = sparse_here;
        std::shuffle(sample.begin(), sample.end(), rng);
        sample.resize(static_cast<std::size_t>(l2));
        std::vector<int> neighbors_found;
        for (int a : sample) {
          if (out_of_ops) break;
          for (int b : relevant) {
            if (out_of_ops) break;
            if (auto q = query_ab(a, b)) {
              E.set_direct(a, b, *q);
              neighbors_found.push_back(b);
            }
          }
          covered[static_cast<std::size_t>(a)] = 1;
        }
        std::shared_ptr<const std::vector<int>> child_relevant = iv.relevant;
        if (!neighbors_found.empty()) {
          const std::int64_t span = static_cast<std::int64_t>(iv.hi - iv.lo) * d;
          const std::int64_t hw =
              static_cast<std::int64_t>(std::ceil(static_cast<double>(span) / params.eps));
          std::vector<int> in_range;
          for (int b : neighbors_found) {
            const std::int64_t s = b_window(b).start;
            findex.append_range(s - hw, s + hw, in_range);
          }
          std::sort(in_range.begin(), in_range.end());
          in_range.erase(std::unique(in_range.begin(), in_range.end()), in_range.end());
          std::vector<int> narrowed;
          std::set_intersection(relevant.begin(), relevant.end(), in_range.begin(),
                                in_range.end(), std::back_inserter(narrowed));
          child_relevant = std::make_shared<const std::vector<int>>(std::move(narrowed));
        }
        const double cur_count = tpow(t_tau, 0.5 + (level + 2) * params.eps);
        const double next_count = tpow(t_tau, 0.5 + (level + 3) * params.eps);
        const int split = std::max(2, static_cast<int>(std::ceil(next_count / cur_count)));
        const int width = std::max(1, (iv.hi - iv.lo + split - 1) / split);
        for (int lo = iv.lo; lo < iv.hi; lo += width)
          next.push_back(Interval{lo, std::min(iv.hi, lo + width), child_relevant});
      }
      intervals = std::move(next);
    }
    E.finalize();
  }
};

}  // namespace

EstimateMap learn_estimates_prep(const StringSketch& ska, const StringSketch& skb,
                                 const WindowSet& awin, const BWindowPool& pool, int tau_index,
                                 double tau, std::int64_t d, LazyCloseGraph& graph_a2,
                                 LazyCloseGraph& graph_b4, const LearnParams& params,
                                 QueryBudget* budget, LearnStats* stats) {
  PrepLearner learner(ska, skb, awin, pool, tau_index, tau, d, graph_a2, graph_b4, params, budget);
  learner.run();
  if (stats) *stats = learner.stats;
  return std::move(learner.E);
}

EstimateMap learn_estimates_noprep(const StringSketch& ska, const StringSketch& skb,
                                   const WindowSet& awin, const BWindowPool& pool, int tau_index,
                                   double tau, std::int64_t d, const LearnParams& params,
                                   QueryBudget* budget, LearnStats* stats) {
  NoprepLearner learner(ska, skb, awin, pool, tau_index, tau, d, params, budget);
  learner.run();
  if (stats) *stats = learner.stats;
  return std::move(learner.E);
}

}  // namespace edsketch
