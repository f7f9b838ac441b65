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

#include <atomic>
#include <cstdlib>
#include <string>

#include "fuzzydb/error.hpp"
#include "fuzzydb/kernels.hpp"

namespace fuzzydb::kernels {

namespace {

Isa detect() {
  if (const char* forced = std::getenv("FUZZYDB_ISA")) {
    if (std::string_view{forced} == "scalar") return Isa::Scalar;
  }
  return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<const KernelTable*>& active() {
  static std::atomic<const KernelTable*> table{&kernel_table(detect())};
  return table;
}

std::atomic<Isa>& active_tag() {
  static std::atomic<Isa> tag{detect()};
  return tag;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "?";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2:
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& kernel_table(Isa isa) {
#if defined(__x86_64__) || defined(_M_X64)
  if (isa == Isa::Avx2) return avx2::table;
#endif
  (void)isa;
  return scalar::table;
}

Isa active_isa() { return active_tag().load(); }

void set_active_isa(Isa isa) {
  if (!isa_available(isa)) {
    throw Error(ErrorCode::InvalidValue, std::string("ISA not available: ") +
                                             std::string(isa_name(isa)));
  }
  active().store(&kernel_table(isa));
  active_tag().store(isa);
}

void membership(const Trapezoid& t, std::span<const double> xs, std::span<double> out) {
  active().load()->membership(t, xs, out);
}
void possibility(const Trapezoid& probe, const TrapezoidColumns& cols, std::span<double> out) {
  active().load()->possibility(probe, cols, out);
}
void min_into(std::span<double> acc, std::span<const double> rhs) {
  active().load()->min_into(acc, rhs);
}
void max_into(std::span<double> acc, std::span<const double> rhs) {
  active().load()->max_into(acc, rhs);
}
void complement(std::span<double> degrees) { active().load()->complement(degrees); }
void threshold_cut(std::span<double> degrees, double threshold) {
  active().load()->threshold_cut(degrees, threshold);
}

}  // namespace fuzzydb::kernels
