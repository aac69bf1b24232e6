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

#ifndef EDSKETCH_WINDOWS_HPP_
#define EDSKETCH_WINDOWS_HPP_

#include <cstdint>
#include <vector>

#include "edsketch/common.hpp"

namespace edsketch {

enum class WindowSource : std::uint8_t { kA = 0, kB = 1 };

struct Window {
  std::int64_t start = 0;  // 1-based
  std::int64_t len = 0;
  WindowSource source = WindowSource::kA;
  int tau_index = -1;  // which tau family (B windows only)

  std::int64_t end() const { return start + len - 1; }
};

struct WindowSet {
  std::vector<Window> windows;
  std::int64_t d = 0;      // base width
  double tau = 0.0;        // threshold (B families)
  std::int64_t gamma = 1;  // grid step
};

/// {0} united with {(1+eps)^j / d : j >= 0} intersected with (0, 1],
/// ascending; O(log d / eps) values.
std::vector<double> tau_grid(std::int64_t d, double eps);

/// ceil(n/d) disjoint windows covering [1, n]; the last may be short.
WindowSet decompose_a(std::int64_t n, std::int64_t d);

/// The tau family of B windows: widths h_tau and l_tau at every gamma_tau
/// grid start, truncated at n. tau must come from tau_grid(d, eps).
WindowSet decompose_b(std::int64_t n, std::int64_t d, double tau, double eps,
                      int tau_index = -1);

/// Widths and grid step for a tau family, exposed for tests.
struct BFamilyShape {
  std::int64_t h = 0, l = 0, gamma = 1;
};
BFamilyShape b_family_shape(std::int64_t d, double tau, double eps);

}  // namespace edsketch

#endif  // EDSKETCH_WINDOWS_HPP_
