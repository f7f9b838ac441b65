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

#include <algorithm>

#include "fuzzydb/detail/formulas.hpp"
#include "fuzzydb/kernels.hpp"

namespace fuzzydb::kernels::scalar {

namespace {

void membership(const Trapezoid& t, std::span<const double> xs, std::span<double> out) {
  const double a = t.alpha(), b = t.beta(), c = t.gamma(), d = t.delta();
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out[i] = detail::membership(a, b, c, d, xs[i]);
  }
}

void possibility(const Trapezoid& probe, const TrapezoidColumns& cols, std::span<double> out) {
  const double pa = probe.alpha(), pb = probe.beta(), pc = probe.gamma(), pd = probe.delta();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    out[i] = detail::possibility(pa, pb, pc, pd, cols.alpha[i], cols.beta[i], cols.gamma[i],
                                 cols.delta[i]);
  }
}

void min_into(std::span<double> acc, std::span<const double> rhs) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = std::min(acc[i], rhs[i]);
}

void max_into(std::span<double> acc, std::span<const double> rhs) {
  for (std::size_t i = 0; i < acc.size(); ++i) acc[i] = std::max(acc[i], rhs[i]);
}

void complement(std::span<double> degrees) {
  for (auto& d : degrees) d = 1.0 - d;
}

void threshold_cut(std::span<double> degrees, double threshold) {
  for (auto& d : degrees) {
    if (d < threshold) d = 0.0;
  }
}

}  // namespace

const KernelTable table{membership, possibility, min_into, max_into, complement, threshold_cut};

}  // namespace fuzzydb::kernels::scalar
