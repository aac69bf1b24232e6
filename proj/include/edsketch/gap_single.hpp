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

#ifndef EDSKETCH_GAP_SINGLE_HPP_
#define EDSKETCH_GAP_SINGLE_HPP_

#include <cstdint>
#include <memory>
#include <vector>

#include "edsketch/budget.hpp"
#include "edsketch/hash_sketch.hpp"
#include "edsketch/wave.hpp"

namespace edsketch {

// Single-string preprocessing for the quadratic gap problem: decide
// ED(A, B) <= k versus ED(A, B) > 3k^2 while only B was preprocessed.
// B's indices are sampled with probability c_s * ln^2(n) / k (clamped to 1);
// for every shift d in [-k, k] the sampled-and-shifted string
// B^d = b_{i1+d} b_{i2+d} ... is sketched, with out-of-range positions mapped
// to the sentinel so they can never match.

/// Deterministic sample of [1, n]; index n is always included so a fully
/// matching run can certify reaching the end of the string.
std::vector<std::int64_t> derive_sample_set(std::int64_t n, std::int64_t k, std::uint64_t seed,
                                            double c_s);

struct SampledSketchB {
  std::int64_t n = 0;
  std::int64_t k = 0;
  std::uint64_t seed = 0;
  double c_s = 1.0;
  Alphabet alphabet = Alphabet::kBytes;
  HashParams params;
  std::vector<std::int64_t> sample;        // S, sorted ascending, ends with n
  std::vector<StringSketch> shifted;       // shifted[d + k] sketches B^d
  std::shared_ptr<const TokenString> raw;  // optional embedded B

  std::int64_t sample_size() const { return static_cast<std::int64_t>(sample.size()); }
};

struct GapVerdict {
  bool yes = false;
  int waves_used = 0;
};

/// Builds the sketch in O~(n) time; deterministic given the seed. The sample
/// is redrawn (advancing the seeded stream) on the Chernoff-tail event that
/// its size leaves [1/2, 2] times the expectation.
SampledSketchB preprocess_single(const TokenString& b, std::int64_t k, std::uint64_t seed,
                                 double c_s = 1.0, bool embed_raw = true);

/// Query-side sampled view of A: A restricted to B's sample set, sketched
/// with B's hash params.
StringSketch sample_query_side(const TokenString& a, const SampledSketchB& sb,
                               QueryBudget* budget = nullptr);

/// Approx-Equal(i, d): all rows strictly before the first sampled mismatch at
/// or after n(i) count as equal; returns n when no sampled mismatch remains.
/// Never smaller than the exact Equal(i, d), which is what makes the
/// approximate waves dominate the exact ones.
std::int64_t approx_equal(const StringSketch& qa, const SampledSketchB& sb, std::int64_t i,
                          std::int64_t d, QueryBudget* budget = nullptr);

/// Runs the h-wave recurrence with Approx-Equal for h in [0, k]; YES iff the
/// wave reaches row n within k waves. Completeness holds whenever ED <= k;
/// soundness (NO) w.h.p. when ED > 2k^2 + 2k.
GapVerdict gap_query(const SampledSketchB& sb, const TokenString& a,
                     QueryBudget* budget = nullptr, WaveTrace* trace = nullptr);

/// Convenience wrapper: a geometric ladder of sketches k0, 2*k0, 4*k0, ...
/// Queries are answered by the smallest rung with rung k >= requested k.
struct GapLadder {
  std::vector<SampledSketchB> rungs;

  static GapLadder build(const TokenString& b, std::int64_t k_min, std::int64_t k_max,
                         std::uint64_t seed, double c_s = 1.0);
  const SampledSketchB& rung_for(std::int64_t k) const;
};

}  // namespace edsketch

#endif  // EDSKETCH_GAP_SINGLE_HPP_
