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

#include "edsketch/windows.hpp"

#include <algorithm>
#include <cmath>

namespace edsketch {

std::vector<double> tau_grid(std::int64_t d, double eps) {
  std::vector<double> grid{0.0};
  const double dd = static_cast<double>(d);
  double power = 1.0;  // (1+eps)^j
  for (;;) {
    const double tau = power / dd;
    if (tau > 1.0 + 1e-12) break;
    grid.push_back(std::min(tau, 1.0));
    power *= 1.0 + eps;
  }
  return grid;
}

BFamilyShape b_family_shape(std::int64_t d, double tau, double eps) {
  BFamilyShape shape;
  if (tau <= 0.0) {
    shape.h = shape.l = d;
    shape.gamma = 1;
    return shape;
  }
  const double dd = static_cast<double>(d);
  // tau = (1+eps)^j / d; the j = 0 family is special-cased to d+1/d-1.
  const double j = std::round(std::log(tau * dd) / std::log(1.0 + eps));
  if (j <= 0.5) {
    shape.h = d + 1;
    shape.l = d - 1;
  } else {
    const double delta = std::pow(1.0 + eps, j - 1.0);
    shape.h = static_cast<std::int64_t>(std::floor(dd + delta));
    shape.l = static_cast<std::int64_t>(std::floor(dd - delta));
  }
  shape.l = std::max<std::int64_t>(shape.l, 1);
  shape.gamma = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(eps * tau * dd)));
  return shape;
}

WindowSet decompose_a(std::int64_t n, std::int64_t d) {
  WindowSet set;
  set.d = d;
  for (std::int64_t start = 1; start <= n; start += d) {
    Window w;
    w.start = start;
    w.len = std::min(d, n - start + 1);
    w.source = WindowSource::kA;
    set.windows.push_back(w);
  }
  return set;
}

WindowSet decompose_b(std::int64_t n, std::int64_t d, double tau, double eps, int tau_index) {
  const BFamilyShape shape = b_family_shape(d, tau, eps);
  WindowSet set;
  set.d = d;
  set.tau = tau;
  set.gamma = shape.gamma;
  for (std::int64_t start = 1; start <= n; start += shape.gamma) {
    for (std::int64_t len : {shape.h, shape.l}) {
      Window w;
      w.start = start;
      w.len = std::min(len, n - start + 1);
      w.source = WindowSource::kB;
      w.tau_index = tau_index;
      set.windows.push_back(w);
      if (shape.h == shape.l) break;
    }
  }
  // Truncation at n can make the two widths coincide near the right edge.
  std::sort(set.windows.begin(), set.windows.end(), [](const Window& a, const Window& b) {
    return a.start != b.start ? a.start < b.start : a.len < b.len;
  });
  set.windows.erase(std::unique(set.windows.begin(), set.windows.end(),
                                [](const Window& a, const Window& b) {
                                  return a.start == b.start && a.len == b.len;
                                }),
                    set.windows.end());
  return set;
}

}  // namespace edsketch
