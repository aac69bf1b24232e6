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

#ifndef EDSKETCH_WAVE_HPP_
#define EDSKETCH_WAVE_HPP_

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <vector>

#include "edsketch/budget.hpp"

namespace edsketch {

// The h-wave dynamic program on diagonals [-k, k]: L^h(d) is the furthest row
// reachable on diagonal d with at most h edits. One engine serves both the
// exact and the sampled variant; only the Equal primitive differs.

inline constexpr std::int64_t kWaveUnreached = -1;

/// Per-wave rows, recorded when a caller wants to inspect L^h.
struct WaveTrace {
  std::int64_t k = 0;
  // waves[h][d + k] = L^h(d), kWaveUnreached where undefined.
  std::vector<std::vector<std::int64_t>> waves;
};

struct WaveOutcome {
  std::optional<std::int64_t> distance;  // set iff the target cell was reached with <= k edits
  int waves_used = 0;
};

/// Runs waves h = 0..k. EqualFn(i, d) must return the furthest row q >= i-1
/// with A[i..q] == B[i+d..q+d] (q = i-1 on immediate mismatch or out of
/// range); rows are 1-based, q is clamped by the callee. Terminates as soon
/// as row n_a is reached on the target diagonal n_b - n_a.
template <class EqualFn>
WaveOutcome run_waves(std::int64_t n_a, std::int64_t n_b, std::int64_t k, EqualFn&& equal_fn,
                      WaveTrace* trace = nullptr) {
  WaveOutcome out;
  const std::int64_t target_diag = n_b - n_a;
  if (trace) {
    trace->k = k;
    trace->waves.clear();
  }
  if (std::llabs(target_diag) > k) return out;  // unreachable within k edits

  const std::int64_t width = 2 * k + 1;
  std::vector<std::int64_t> prev(static_cast<std::size_t>(width), kWaveUnreached);
  std::vector<std::int64_t> cur(static_cast<std::size_t>(width), kWaveUnreached);
  auto clamp_row = [&](std::int64_t d, std::int64_t r) {
    const std::int64_t lim = std::min(n_a, n_b - d);
    return r > lim ? lim : r;
  };

  for (std::int64_t h = 0; h <= k; ++h) {
    for (std::int64_t d = -k; d <= k; ++d) {
      std::int64_t init = kWaveUnreached;
      if (h == 0) {
        if (d == 0) init = 0;
      } else {
        const std::int64_t same = prev[static_cast<std::size_t>(d + k)];
        if (same != kWaveUnreached) init = std::max(init, clamp_row(d, same + 1));
        if (d - 1 >= -k) {
          const std::int64_t left = prev[static_cast<std::size_t>(d - 1 + k)];
          if (left != kWaveUnreached) init = std::max(init, clamp_row(d, left));
        }
        if (d + 1 <= k) {
          const std::int64_t right = prev[static_cast<std::size_t>(d + 1 + k)];
          if (right != kWaveUnreached) init = std::max(init, clamp_row(d, right + 1));
        }
      }
      if (init == kWaveUnreached || init + d < 0) {
        cur[static_cast<std::size_t>(d + k)] = kWaveUnreached;
        continue;
      }
      cur[static_cast<std::size_t>(d + k)] = clamp_row(d, equal_fn(init + 1, d));
    }
    if (trace) trace->waves.push_back(cur);
    out.waves_used = static_cast<int>(h) + 1;
    if (cur[static_cast<std::size_t>(target_diag + k)] >= n_a) {
      out.distance = h;
      return out;
    }
    std::swap(prev, cur);
  }
  return out;
}

}  // namespace edsketch

#endif  // EDSKETCH_WAVE_HPP_
