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

// Column-at-a-time degree kernels used by the query evaluator. Each kernel
// has a scalar reference implementation and, where the CPU allows, an AVX2
// variant that produces bit-identical results. The variant is selected once
// at startup (FUZZYDB_ISA=scalar forces the reference path).

#pragma once

#include <cstddef>
#include <span>
#include <string_view>

#include "fuzzydb/fuzzy_core.hpp"

namespace fuzzydb::kernels {

enum class Isa { Scalar, Avx2 };

std::string_view isa_name(Isa isa);
bool isa_available(Isa isa);
Isa active_isa();
/// Throws Error(InvalidValue) if the CPU lacks `isa`.
void set_active_isa(Isa isa);

/// Struct-of-arrays view over n trapezoids.
struct TrapezoidColumns {
  std::span<const double> alpha, beta, gamma, delta;
  std::size_t size() const noexcept { return alpha.size(); }
};

struct KernelTable {
  void (*membership)(const Trapezoid& t, std::span<const double> xs, std::span<double> out);
  void (*possibility)(const Trapezoid& probe, const TrapezoidColumns& cols, std::span<double> out);
  void (*min_into)(std::span<double> acc, std::span<const double> rhs);
  void (*max_into)(std::span<double> acc, std::span<const double> rhs);
  void (*complement)(std::span<double> degrees);
  void (*threshold_cut)(std::span<double> degrees, double threshold);
};

/// Table for a specific ISA; the caller must check isa_available first.
const KernelTable& kernel_table(Isa isa);

// Dispatch through the active table. Spans must have equal lengths.
void membership(const Trapezoid& t, std::span<const double> xs, std::span<double> out);
void possibility(const Trapezoid& probe, const TrapezoidColumns& cols, std::span<double> out);
void min_into(std::span<double> acc, std::span<const double> rhs);
void max_into(std::span<double> acc, std::span<const double> rhs);
void complement(std::span<double> degrees);
/// Degrees strictly below `threshold` become 0.
void threshold_cut(std::span<double> degrees, double threshold);

namespace scalar {
extern const KernelTable table;
}
#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
extern const KernelTable table;
}
#endif

}  // namespace fuzzydb::kernels
