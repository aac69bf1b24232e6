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

#include "edsketch/gap_single.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace edsketch {

namespace {

double sample_probability(std::int64_t n, std::int64_t k, double c_s) {
  const double ln_n = std::log(static_cast<double>(std::max<std::int64_t>(n, 2)));
  return std::min(1.0, c_s * ln_n * ln_n / static_cast<double>(k));
}

std::vector<std::int64_t> draw_sample(std::int64_t n, double p, std::mt19937_64& rng) {
  std::vector<std::int64_t> s;
  s.reserve(static_cast<std::size_t>(p * static_cast<double>(n)) + 16);
  if (p >= 1.0) {
    s.resize(static_cast<std::size_t>(n));
    for (std::int64_t i = 1; i <= n; ++i) s[static_cast<std::size_t>(i - 1)] = i;
    return s;
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (std::int64_t i = 1; i <= n; ++i)
    if (u(rng) < p) s.push_back(i);
  if (s.empty() || s.back() != n) s.push_back(n);
  return s;
}

StringSketch sketch_tokens(const std::vector<Token>& tokens, const HashParams& params) {
  // Internal path: shifted strings legitimately contain the sentinel.
  TokenString t;
  t.tokens = tokens;
  return StringSketch(t, params, /*embed_raw=*/false, /*eager_levels=*/false);
}

}  // namespace

std::vector<std::int64_t> derive_sample_set(std::int64_t n, std::int64_t k, std::uint64_t seed,
                                            double c_s) {
  const double p = sample_probability(n, k, c_s);
  const double expected = p * static_cast<double>(n);
  std::mt19937_64 rng(derive_seed(seed, 0x6761702D73616D70ull));  // "gap-samp"
  for (int attempt = 0; attempt < 64; ++attempt) {
    std::vector<std::int64_t> s = draw_sample(n, p, rng);
    const double size = static_cast<double>(s.size());
    if (size >= 0.5 * expected && size <= 2.0 * expected + 1.0) return s;
  }
  fail(Errc::kParamError, "sample size repeatedly outside the Chernoff band");
}

SampledSketchB preprocess_single(const TokenString& b, std::int64_t k, std::uint64_t seed,
                                 double c_s, bool embed_raw) {
  const std::int64_t n = b.size();
  if (n == 0) fail(Errc::kEmptyInput, "cannot preprocess an empty string");
  if (k < 1 || k > n) fail(Errc::kParamError, "gap parameter k must be in [1, n]");
  SampledSketchB sk;
  sk.n = n;
  sk.k = k;
  sk.seed = seed;
  sk.c_s = c_s;
  sk.alphabet = b.alphabet;
  sk.params = HashParams::from_seed(seed);
  sk.sample = derive_sample_set(n, k, seed, c_s);

  const std::int64_t s = sk.sample_size();
  std::vector<Token> shifted_tokens(static_cast<std::size_t>(s));
  sk.shifted.reserve(static_cast<std::size_t>(2 * k + 1));
  for (std::int64_t d = -k; d <= k; ++d) {
    for (std::int64_t j = 0; j < s; ++j) {
      const std::int64_t pos = sk.sample[static_cast<std::size_t>(j)] + d;
      shifted_tokens[static_cast<std::size_t>(j)] =
          (pos >= 1 && pos <= n) ? b.at1(pos) : kSentinelToken;
    }
    sk.shifted.push_back(sketch_tokens(shifted_tokens, sk.params));
  }
  if (embed_raw) sk.raw = std::make_shared<const TokenString>(b);
  return sk;
}

StringSketch sample_query_side(const TokenString& a, const SampledSketchB& sb,
                               QueryBudget* budget) {
  if (a.size() != sb.n) fail(Errc::kParamError, "query string length differs from sketch");
  std::vector<Token> sampled(sb.sample.size());
  for (std::size_t j = 0; j < sb.sample.size(); ++j) sampled[j] = a.at1(sb.sample[j]);
  charge_probe(budget, sampled.size());  // sampled reads + prefix-table build
  TokenString t;
  t.tokens = std::move(sampled);
  t.alphabet = a.alphabet;
  return StringSketch(t, sb.params, /*embed_raw=*/false, /*eager_levels=*/false);
}

std::int64_t approx_equal(const StringSketch& qa, const SampledSketchB& sb, std::int64_t i,
                          std::int64_t d, QueryBudget* budget) {
  if (d < -sb.k || d > sb.k) fail(Errc::kDiagError, "diagonal outside [-k, k]");
  charge_equal(budget);
  const std::int64_t n = sb.n;
  if (i < 1 || i > n || i + d > n) return i - 1;
  // n(i): first sampled index >= i. The sample always contains n.
  const auto it = std::lower_bound(sb.sample.begin(), sb.sample.end(), i);
  const std::int64_t pos = (it - sb.sample.begin()) + 1;  // 1-based in sampled coords
  const std::int64_t s = qa.size();
  const StringSketch& bd = sb.shifted[static_cast<std::size_t>(d + sb.k)];

  // Longest sampled prefix from pos on which A_S and B^d agree, by doubling
  // then bisection on the two prefix-hash arrays.
  const std::int64_t max_len = s - pos + 1;
  std::int64_t match = 0;
  auto agree = [&](std::int64_t len) {
    charge_probe(budget, 2);
    return qa.substring_hash(pos, len, budget) == bd.substring_hash(pos, len, budget);
  };
  if (max_len > 0 && agree(1)) {
    std::int64_t lo = 1, probe = 2;
    while (probe <= max_len && agree(probe)) {
      lo = probe;
      probe *= 2;
    }
    std::int64_t hi = std::min(probe, max_len + 1);
    while (hi - lo > 1) {
      const std::int64_t mid = lo + (hi - lo) / 2;
      if (agree(mid))
        lo = mid;
      else
        hi = mid;
    }
    match = lo;
  }
  if (match == max_len) return n;  // no sampled mismatch remains
  // First sampled mismatch sits at sampled position pos + match.
  const std::int64_t mismatch_index = sb.sample[static_cast<std::size_t>(pos + match - 1)];
  return mismatch_index - 1;
}

GapVerdict gap_query(const SampledSketchB& sb, const TokenString& a, QueryBudget* budget,
                     WaveTrace* trace) {
  if (a.size() != sb.n) fail(Errc::kParamError, "query string length differs from sketch");
  const StringSketch qa = sample_query_side(a, sb, budget);
  auto eq = [&](std::int64_t i, std::int64_t d) { return approx_equal(qa, sb, i, d, budget); };
  const WaveOutcome out = run_waves(sb.n, sb.n, sb.k, eq, trace);
  GapVerdict v;
  v.yes = out.distance.has_value();
  v.waves_used = out.waves_used;
  return v;
}

GapLadder GapLadder::build(const TokenString& b, std::int64_t k_min, std::int64_t k_max,
                           std::uint64_t seed, double c_s) {
  if (k_min < 1 || k_min > k_max) fail(Errc::kParamError, "bad ladder bounds");
  GapLadder ladder;
  for (std::int64_t k = k_min; k <= std::min<std::int64_t>(k_max, b.size()); k *= 2)
    ladder.rungs.push_back(preprocess_single(b, k, seed, c_s));
  return ladder;
}

const SampledSketchB& GapLadder::rung_for(std::int64_t k) const {
  for (const auto& r : rungs)
    if (r.k >= k) return r;
  fail(Errc::kParamError, "no ladder rung covers the requested k");
}

}  // namespace edsketch
