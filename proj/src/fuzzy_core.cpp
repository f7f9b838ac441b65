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

#include "fuzzydb/fuzzy_core.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "fuzzydb/detail/formulas.hpp"
#include "fuzzydb/error.hpp"

namespace fuzzydb {

namespace {

std::string num(double v) { return std::to_string(v); }

void require_finite(double v, const char* what) {
  if (!std::isfinite(v)) {
    throw Error(ErrorCode::InvalidValue, std::string(what) + " must be finite");
  }
}

}  // namespace

MembershipDegree::MembershipDegree(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw Error(ErrorCode::DegreeOutOfRange, "degree " + num(value) + " outside [0, 1]");
  }
}

Trapezoid::Trapezoid(double alpha, double beta, double gamma, double delta)
    : alpha_(alpha), beta_(beta), gamma_(gamma), delta_(delta) {
  const bool finite = std::isfinite(alpha) && std::isfinite(beta) &&
                      std::isfinite(gamma) && std::isfinite(delta);
  if (!finite || !(alpha <= beta && beta <= gamma && gamma <= delta)) {
    throw Error(ErrorCode::BadShape, "trapezoid corners must satisfy alpha <= beta <= gamma <= delta, got (" +
                                         num(alpha) + ", " + num(beta) + ", " + num(gamma) + ", " +
                                         num(delta) + ")");
  }
}

FuzzyValue2 FuzzyValue2::crisp(double d) {
  require_finite(d, "crisp value");
  return FuzzyValue2{Crisp{d}};
}

FuzzyValue2 FuzzyValue2::label(std::string name) {
  if (name.empty()) throw Error(ErrorCode::InvalidValue, "empty label name");
  return FuzzyValue2{LabelRef{std::move(name)}};
}

FuzzyValue2 FuzzyValue2::interval(double lo, double hi) {
  require_finite(lo, "interval bound");
  require_finite(hi, "interval bound");
  if (!(lo <= hi)) throw Error(ErrorCode::InvalidValue, "interval requires n <= m");
  return FuzzyValue2{Interval{lo, hi}};
}

FuzzyValue2 FuzzyValue2::approx(double center, double margin) {
  require_finite(center, "approximate value");
  require_finite(margin, "margin");
  if (!(margin >= 0.0)) throw Error(ErrorCode::InvalidValue, "margin must be >= 0");
  // The ramps must stay finite once expanded.
  require_finite(center - margin, "approximate lower bound");
  require_finite(center + margin, "approximate upper bound");
  return FuzzyValue2{Approx{center, margin}};
}

PossPair::PossPair(double possibility, std::string label)
    : p_(possibility), label_(std::move(label)) {
  if (!(possibility > 0.0 && possibility <= 1.0)) {
    throw Error(ErrorCode::DegreeOutOfRange,
                "possibility " + num(possibility) + " outside (0, 1]");
  }
  if (label_.empty()) throw Error(ErrorCode::InvalidValue, "empty label name");
}

FuzzyValue3 FuzzyValue3::distribution(std::vector<PossPair> pairs) {
  if (pairs.empty()) throw Error(ErrorCode::InvalidValue, "empty possibility distribution");
  std::set<std::string_view> seen;
  for (const auto& p : pairs) {
    if (!seen.insert(p.label()).second) {
      throw Error(ErrorCode::InvalidValue, "label '" + p.label() + "' repeated in distribution");
    }
  }
  return FuzzyValue3{PossDist{std::move(pairs)}};
}

std::span<const PossPair> FuzzyValue3::pairs() const noexcept {
  if (const auto* s = std::get_if<Simple>(&value_)) return {&s->pair, 1};
  if (const auto* d = std::get_if<PossDist>(&value_)) return d->pairs;
  return {};
}

SimilarityRelation::SimilarityRelation(std::map<int, std::string> labels,
                                       const std::map<std::pair<int, int>, double>& entries)
    : labels_(std::move(labels)) {
  for (const auto& [key, degree] : entries) {
    auto [i, j] = key;
    if (i == j) throw Error(ErrorCode::SelfPair, "similarity of a label with itself is implicit");
    if (!labels_.contains(i) || !labels_.contains(j)) {
      throw Error(ErrorCode::UnknownLabel, "similarity pair references undefined label id");
    }
    MembershipDegree checked{degree};
    if (i > j) std::swap(i, j);
    auto [it, inserted] = entries_.emplace(std::pair{i, j}, checked.value());
    if (!inserted && it->second != checked.value()) {
      throw Error(ErrorCode::ConflictingDegree, "conflicting degrees for one label pair");
    }
  }
}

MembershipDegree SimilarityRelation::degree(int id1, int id2) const {
  if (!labels_.contains(id1) || !labels_.contains(id2)) {
    throw Error(ErrorCode::UnknownLabel, "label id " + std::to_string(labels_.contains(id1) ? id2 : id1) +
                                             " is not defined on this attribute");
  }
  if (id1 == id2) return MembershipDegree::one();
  if (id1 > id2) std::swap(id1, id2);
  const auto it = entries_.find({id1, id2});
  return it == entries_.end() ? MembershipDegree::zero() : MembershipDegree{it->second};
}

MembershipDegree SimilarityRelation::degree(std::string_view label1, std::string_view label2) const {
  return degree(id_of(label1), id_of(label2));
}

int SimilarityRelation::id_of(std::string_view label) const {
  for (const auto& [id, name] : labels_) {
    if (name == label) return id;
  }
  throw Error(ErrorCode::UnknownLabel, "unknown label '" + std::string(label) + "'");
}

MembershipDegree trapezoid_membership(const Trapezoid& t, double x) {
  return MembershipDegree{detail::membership(t.alpha(), t.beta(), t.gamma(), t.delta(), x)};
}

std::optional<Trapezoid> to_trapezoid(const FuzzyValue2& v, const LabelResolver& resolve) {
  struct Visitor {
    const LabelResolver& resolve;
    std::optional<Trapezoid> operator()(const Unknown&) const { return std::nullopt; }
    std::optional<Trapezoid> operator()(const Undefined&) const { return std::nullopt; }
    std::optional<Trapezoid> operator()(const Null&) const { return std::nullopt; }
    std::optional<Trapezoid> operator()(const Crisp& c) const { return Trapezoid::point(c.value); }
    std::optional<Trapezoid> operator()(const LabelRef& l) const {
      if (!resolve) throw Error(ErrorCode::UnknownLabel, "no label catalog for '" + l.name + "'");
      return resolve(l.name);
    }
    std::optional<Trapezoid> operator()(const Interval& i) const {
      return Trapezoid{i.lo, i.lo, i.hi, i.hi};
    }
    std::optional<Trapezoid> operator()(const Approx& a) const {
      return Trapezoid{a.center - a.margin, a.center, a.center, a.center + a.margin};
    }
    std::optional<Trapezoid> operator()(const Trapezoid& t) const { return t; }
  };
  return std::visit(Visitor{resolve}, v.get());
}

MembershipDegree possibility(const Trapezoid& a, const Trapezoid& b) {
  return MembershipDegree{detail::possibility(a.alpha(), a.beta(), a.gamma(), a.delta(),
                                              b.alpha(), b.beta(), b.gamma(), b.delta())};
}

MembershipDegree similarity_degree(const SimilarityRelation& rel, int id1, int id2) {
  return rel.degree(id1, id2);
}

namespace {

template <typename V>
bool is_inapplicable(const V& v) {
  return std::holds_alternative<Undefined>(v.get()) || std::holds_alternative<Null>(v.get());
}

}  // namespace

MembershipDegree feq_type2(const FuzzyValue2& a, const FuzzyValue2& b,
                           const LabelResolver& resolve) {
  if (is_inapplicable(a) || is_inapplicable(b)) return MembershipDegree::zero();
  if (std::holds_alternative<Unknown>(a.get()) || std::holds_alternative<Unknown>(b.get())) {
    return MembershipDegree::one();
  }
  return possibility(*to_trapezoid(a, resolve), *to_trapezoid(b, resolve));
}

MembershipDegree feq_type3(const FuzzyValue3& a, const FuzzyValue3& b,
                           const SimilarityRelation& rel) {
  if (is_inapplicable(a) || is_inapplicable(b)) return MembershipDegree::zero();
  if (std::holds_alternative<Unknown>(a.get()) || std::holds_alternative<Unknown>(b.get())) {
    return MembershipDegree::one();
  }
  double best = 0.0;
  for (const auto& pa : a.pairs()) {
    const int ia = rel.id_of(pa.label());
    for (const auto& pb : b.pairs()) {
      const double s = rel.degree(ia, rel.id_of(pb.label())).value();
      best = std::max(best, std::min({pa.possibility(), pb.possibility(), s}));
    }
  }
  return MembershipDegree{best};
}

}  // namespace fuzzydb
