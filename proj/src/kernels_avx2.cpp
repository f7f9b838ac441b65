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

// AVX2 variants. Every lane performs the same IEEE operations in the same
// order as detail::membership / detail::possibility; branches become blends
// applied in reverse precedence.

#include <immintrin.h>

#include "fuzzydb/detail/formulas.hpp"
#include "fuzzydb/kernels.hpp"

namespace fuzzydb::kernels::avx2 {

namespace {

constexpr std::size_t kLanes = 4;

void membership(const Trapezoid& t, std::span<const double> xs, std::span<double> out) {
  const double a = t.alpha(), b = t.beta(), c = t.gamma(), d = t.delta();
  const __m256d va = _mm256_set1_pd(a);
  const __m256d vb = _mm256_set1_pd(b);
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vd = _mm256_set1_pd(d);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d rise_den = _mm256_sub_pd(vb, va);
  const __m256d fall_den = _mm256_sub_pd(vd, vc);

  const std::size_t n = xs.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d x = _mm256_loadu_pd(xs.data() + i);
    const __m256d core = _mm256_and_pd(_mm256_cmp_pd(vb, x, _CMP_LE_OQ),
                                       _mm256_cmp_pd(x, vc, _CMP_LE_OQ));
    const __m256d outside = _mm256_or_pd(_mm256_cmp_pd(x, va, _CMP_LE_OQ),
                                         _mm256_cmp_pd(x, vd, _CMP_GE_OQ));
    const __m256d rising = _mm256_cmp_pd(x, vb, _CMP_LT_OQ);
    const __m256d rise = _mm256_div_pd(_mm256_sub_pd(x, va), rise_den);
    const __m256d fall = _mm256_div_pd(_mm256_sub_pd(vd, x), fall_den);
    __m256d r = _mm256_blendv_pd(fall, rise, rising);
    r = _mm256_blendv_pd(r, zero, outside);
    r = _mm256_blendv_pd(r, one, core);
    _mm256_storeu_pd(out.data() + i, r);
  }
  for (; i < n; ++i) out[i] = detail::membership(a, b, c, d, xs[i]);
}

void possibility(const Trapezoid& probe, const TrapezoidColumns& cols, std::span<double> out) {
  const __m256d a1 = _mm256_set1_pd(probe.alpha());
  const __m256d b1 = _mm256_set1_pd(probe.beta());
  const __m256d c1 = _mm256_set1_pd(probe.gamma());
  const __m256d d1 = _mm256_set1_pd(probe.delta());
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);

  const std::size_t n = cols.size();
  std::size_t i = 0;
  for (; i + kLanes <= n; i += kLanes) {
    const __m256d a2 = _mm256_loadu_pd(cols.alpha.data() + i);
    const __m256d b2 = _mm256_loadu_pd(cols.beta.data() + i);
    const __m256d c2 = _mm256_loadu_pd(cols.gamma.data() + i);
    const __m256d d2 = _mm256_loadu_pd(cols.delta.data() + i);

    const __m256d core =
        _mm256_cmp_pd(_mm256_max_pd(b1, b2), _mm256_min_pd(c1, c2), _CMP_LE_OQ);
    const __m256d first_left = _mm256_cmp_pd(c1, b2, _CMP_LT_OQ);
    const __m256d lo_c = _mm256_blendv_pd(c2, c1, first_left);
    const __m256d lo_d = _mm256_blendv_pd(d2, d1, first_left);
    const __m256d hi_a = _mm256_blendv_pd(a1, a2, first_left);
    const __m256d hi_b = _mm256_blendv_pd(b1, b2, first_left);
    const __m256d disjoint = _mm256_cmp_pd(lo_d, hi_a, _CMP_LE_OQ);
    const __m256d num = _mm256_sub_pd(lo_d, hi_a);
    const __m256d den = _mm256_add_pd(_mm256_sub_pd(lo_d, lo_c), _mm256_sub_pd(hi_b, hi_a));
    __m256d r = _mm256_div_pd(num, den);
    r = _mm256_blendv_pd(r, zero, disjoint);
    r = _mm256_blendv_pd(r, one, core);
    _mm256_storeu_pd(out.data() + i, r);
  }
  for (; i < n; ++i) {
    out[i] = detail::possibility(probe.alpha(), probe.beta(), probe.gamma(), probe.delta(),
                                 cols.alpha[i], cols.beta[i], cols.gamma[i], cols.delta[i]);
  }
}

void min_into(std::span<double> acc, std::span<const double> rhs) {
  std::size_t i = 0;
  for (; i + kLanes <= acc.size(); i += kLanes) {
    const __m256d x = _mm256_loadu_pd(acc.data() + i);
    const __m256d y = _mm256_loadu_pd(rhs.data() + i);
    // std::min(x, y) keeps x unless y < x.
    _mm256_storeu_pd(acc.data() + i, _mm256_blendv_pd(x, y, _mm256_cmp_pd(y, x, _CMP_LT_OQ)));
  }
  for (; i < acc.size(); ++i) acc[i] = std::min(acc[i], rhs[i]);
}

void max_into(std::span<double> acc, std::span<const double> rhs) {
  std::size_t i = 0;
  for (; i + kLanes <= acc.size(); i += kLanes) {
    const __m256d x = _mm256_loadu_pd(acc.data() + i);
    const __m256d y = _mm256_loadu_pd(rhs.data() + i);
    // std::max(x, y) keeps x unless x < y.
    _mm256_storeu_pd(acc.data() + i, _mm256_blendv_pd(x, y, _mm256_cmp_pd(x, y, _CMP_LT_OQ)));
  }
  for (; i < acc.size(); ++i) acc[i] = std::max(acc[i], rhs[i]);
}

void complement(std::span<double> degrees) {
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + kLanes <= degrees.size(); i += kLanes) {
    const __m256d x = _mm256_loadu_pd(degrees.data() + i);
    _mm256_storeu_pd(degrees.data() + i, _mm256_sub_pd(one, x));
  }
  for (; i < degrees.size(); ++i) degrees[i] = 1.0 - degrees[i];
}

void threshold_cut(std::span<double> degrees, double threshold) {
  const __m256d t = _mm256_set1_pd(threshold);
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + kLanes <= degrees.size(); i += kLanes) {
    const __m256d x = _mm256_loadu_pd(degrees.data() + i);
    _mm256_storeu_pd(degrees.data() + i,
                     _mm256_blendv_pd(x, zero, _mm256_cmp_pd(x, t, _CMP_LT_OQ)));
  }
  for (; i < degrees.size(); ++i) {
    if (degrees[i] < threshold) degrees[i] = 0.0;
  }
}

}  // namespace

const KernelTable table{membership, possibility, min_into, max_into, complement, threshold_cut};

}  // namespace fuzzydb::kernels::avx2
