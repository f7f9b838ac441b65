// Copyright 2026 the fuzzydb authors
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

// Scalar formulas shared by fuzzy_core and the scalar kernels. The SIMD
// kernels reproduce these operation by operation so results are bit-identical.

#pragma once

#include <algorithm>

namespace fuzzydb::detail {

inline double membership(double a, double b, double c, double d, double x) {
  if (b <= x && x <= c) return 1.0;
  if (x <= a || x >= d) return 0.0;
  if (x < b) return (x - a) / (b - a);
  return (d - x) / (d - c);
}

/// Height of the intersection of two trapezoids. Cores that overlap give 1;
/// otherwise the falling ramp of the left one meets the rising ramp of the
/// right one at (lo_d - hi_a) / ((lo_d - lo_c) + (hi_b - hi_a)).
inline double possibility(double a1, double b1, double c1, double d1,
                          double a2, double b2, double c2, double d2) {
  if (std::max(b1, b2) <= std::min(c1, c2)) return 1.0;
  const bool first_is_left = c1 < b2;
  const double lo_c = first_is_left ? c1 : c2;
  const double lo_d = first_is_left ? d1 : d2;
  const double hi_a = first_is_left ? a2 : a1;
  const double hi_b = first_is_left ? b2 : b1;
  if (lo_d <= hi_a) return 0.0;
  return (lo_d - hi_a) / ((lo_d - lo_c) + (hi_b - hi_a));
}

}  // namespace fuzzydb::detail
