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

// Value model and matching mathematics for fuzzy attributes: trapezoidal
// possibility distributions, ordered-domain values (Type 2), scalar-domain
// values (Type 3) and similarity relations between scalar labels.

#pragma once

#include <compare>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace fuzzydb {

/// A degree in [0, 1].
class MembershipDegree {
 public:
  constexpr MembershipDegree() = default;
  explicit MembershipDegree(double value);

  static constexpr MembershipDegree zero() { return MembershipDegree{}; }
  static MembershipDegree one() { return MembershipDegree{1.0}; }

  constexpr double value() const noexcept { return value_; }

  friend constexpr bool operator==(MembershipDegree, MembershipDegree) = default;
  friend constexpr auto operator<=>(MembershipDegree a, MembershipDegree b) {
    return a.value_ <=> b.value_;
  }

 private:
  double value_ = 0.0;
};

/// Trapezoidal possibility distribution with corners alpha <= beta <= gamma <= delta.
/// Membership is 1 on [beta, gamma], 0 outside (alpha, delta), linear in between.
class Trapezoid {
 public:
  /// Throws Error(BadShape) when the corners are unordered or not finite.
  Trapezoid(double alpha, double beta, double gamma, double delta);

  static Trapezoid point(double d) { return {d, d, d, d}; }

  double alpha() const noexcept { return alpha_; }
  double beta() const noexcept { return beta_; }
  double gamma() const noexcept { return gamma_; }
  double delta() const noexcept { return delta_; }

  friend bool operator==(const Trapezoid&, const Trapezoid&) = default;

 private:
  double alpha_, beta_, gamma_, delta_;
};

struct Unknown {
  friend bool operator==(Unknown, Unknown) = default;
};
struct Undefined {
  friend bool operator==(Undefined, Undefined) = default;
};
struct Null {
  friend bool operator==(Null, Null) = default;
};

struct Crisp {
  double value;
  friend bool operator==(const Crisp&, const Crisp&) = default;
};
struct LabelRef {
  std::string name;
  friend bool operator==(const LabelRef&, const LabelRef&) = default;
};
struct Interval {
  double lo, hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};
struct Approx {
  double center, margin;
  friend bool operator==(const Approx&, const Approx&) = default;
};

/// Value of a Type-2 attribute. The variant order is the protocol type tag.
class FuzzyValue2 {
 public:
  using Variant = std::variant<Unknown, Undefined, Null, Crisp, LabelRef, Interval,
                               Approx, Trapezoid>;

  static FuzzyValue2 unknown() { return FuzzyValue2{Unknown{}}; }
  static FuzzyValue2 undefined() { return FuzzyValue2{Undefined{}}; }
  static FuzzyValue2 null() { return FuzzyValue2{Null{}}; }
  static FuzzyValue2 crisp(double d);
  static FuzzyValue2 label(std::string name);
  static FuzzyValue2 interval(double lo, double hi);
  static FuzzyValue2 approx(double center, double margin);
  static FuzzyValue2 trapezoid(const Trapezoid& t) { return FuzzyValue2{t}; }

  const Variant& get() const noexcept { return value_; }
  /// Type tag 0..7 (UNKNOWN .. TRAPEZOID).
  int tag() const noexcept { return static_cast<int>(value_.index()); }
  bool is_special() const noexcept { return tag() <= 2; }

  friend bool operator==(const FuzzyValue2&, const FuzzyValue2&) = default;

 private:
  explicit FuzzyValue2(Variant v) : value_(std::move(v)) {}
  Variant value_;
};

/// (possibility, label) with 0 < possibility <= 1.
class PossPair {
 public:
  PossPair(double possibility, std::string label);

  double possibility() const noexcept { return p_; }
  const std::string& label() const noexcept { return label_; }

  friend bool operator==(const PossPair&, const PossPair&) = default;

 private:
  double p_;
  std::string label_;
};

struct Simple {
  PossPair pair;
  friend bool operator==(const Simple&, const Simple&) = default;
};
struct PossDist {
  std::vector<PossPair> pairs;
  friend bool operator==(const PossDist&, const PossDist&) = default;
};

/// Value of a Type-3 attribute. The variant order is the protocol type tag.
class FuzzyValue3 {
 public:
  using Variant = std::variant<Unknown, Undefined, Null, Simple, PossDist>;

  static FuzzyValue3 unknown() { return FuzzyValue3{Unknown{}}; }
  static FuzzyValue3 undefined() { return FuzzyValue3{Undefined{}}; }
  static FuzzyValue3 null() { return FuzzyValue3{Null{}}; }
  static FuzzyValue3 simple(PossPair pair) { return FuzzyValue3{Simple{std::move(pair)}}; }
  /// Throws Error(InvalidValue) on an empty list or a repeated label.
  static FuzzyValue3 distribution(std::vector<PossPair> pairs);

  const Variant& get() const noexcept { return value_; }
  int tag() const noexcept { return static_cast<int>(value_.index()); }
  bool is_special() const noexcept { return tag() <= 2; }

  /// The stored pairs; empty for the special markers.
  std::span<const PossPair> pairs() const noexcept;

  friend bool operator==(const FuzzyValue3&, const FuzzyValue3&) = default;

 private:
  explicit FuzzyValue3(Variant v) : value_(std::move(v)) {}
  Variant value_;
};

/// Reflexive, symmetric degree-valued relation over the scalar labels of one
/// attribute. Pairs not stored read as 0. Transitivity is not required.
class SimilarityRelation {
 public:
  SimilarityRelation() = default;
  /// `entries` may use either key order; (i, i) keys and undefined ids are
  /// rejected with InvalidValue / UnknownLabel.
  SimilarityRelation(std::map<int, std::string> labels,
                     const std::map<std::pair<int, int>, double>& entries);

  MembershipDegree degree(int id1, int id2) const;
  MembershipDegree degree(std::string_view label1, std::string_view label2) const;

  int id_of(std::string_view label) const;
  bool contains(int id) const { return labels_.contains(id); }
  const std::map<int, std::string>& labels() const noexcept { return labels_; }
  const std::map<std::pair<int, int>, double>& entries() const noexcept { return entries_; }

 private:
  std::map<int, std::string> labels_;
  std::map<std::pair<int, int>, double> entries_;  // key.first < key.second
};

using LabelResolver = std::function<Trapezoid(std::string_view)>;

MembershipDegree trapezoid_membership(const Trapezoid& t, double x);

/// Point, interval, approximate value or label as a trapezoid; nullopt for
/// UNKNOWN / UNDEFINED / NULL.
std::optional<Trapezoid> to_trapezoid(const FuzzyValue2& v, const LabelResolver& resolve);

/// sup over x of min(mu_a(x), mu_b(x)).
MembershipDegree possibility(const Trapezoid& a, const Trapezoid& b);

MembershipDegree similarity_degree(const SimilarityRelation& rel, int id1, int id2);

/// Fuzzy equality of two ordered-domain values. UNDEFINED or NULL on either
/// side gives 0, otherwise UNKNOWN on either side gives 1.
MembershipDegree feq_type2(const FuzzyValue2& a, const FuzzyValue2& b,
                           const LabelResolver& resolve);

/// max over pairs (i, j) of min(p_i, q_j, s(d_i, e_j)), with the same
/// special-marker rules as feq_type2.
MembershipDegree feq_type3(const FuzzyValue3& a, const FuzzyValue3& b,
                           const SimilarityRelation& rel);

}  // namespace fuzzydb
