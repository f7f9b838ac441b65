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

// Reference implementations used only by tests. They are written from the
// definitions (piecewise-linear trapezoids, sup-min, max-min over label
// pairs) and do not call the library's matching code.

#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fuzzydb/catalog.hpp"
#include "fuzzydb/fquery.hpp"
#include "fuzzydb/storage.hpp"

namespace oracle {

struct Trap {
  double a, b, c, d;
};

/// Piecewise-linear membership read off the four corners.
inline double membership(const Trap& t, double x) {
  if (x >= t.b && x <= t.c) return 1.0;
  if (x > t.a && x < t.b) return (x - t.a) / (t.b - t.a);
  if (x > t.c && x < t.d) return (t.d - x) / (t.d - t.c);
  return 0.0;
}

/// sup-min sampled on n evenly spaced points spanning both supports.
inline double grid_possibility(const Trap& p, const Trap& q, std::size_t n) {
  const double lo = std::min(p.a, q.a);
  const double hi = std::max(p.d, q.d);
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double x = n == 1 ? lo : lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    best = std::max(best, std::min(membership(p, x), membership(q, x)));
  }
  return best;
}

/// Hand derivation: with disjoint cores, L's falling edge (d_L - x)/(d_L - c_L)
/// meets R's rising edge (x - a_R)/(b_R - a_R) at height
/// (d_L - a_R) / ((d_L - c_L) + (b_R - a_R)).
inline double closed_possibility(const Trap& p, const Trap& q) {
  const bool cores_meet = p.b <= q.c && q.b <= p.c;
  if (cores_meet) return 1.0;
  const Trap& l = p.c < q.b ? p : q;
  const Trap& r = p.c < q.b ? q : p;
  if (l.d <= r.a) return 0.0;
  return (l.d - r.a) / ((l.d - l.c) + (r.b - r.a));
}

/// Column-bound lookups straight from the catalog's table rows.
class Lookups {
 public:
  explicit Lookups(const fuzzydb::Catalog& cat) {
    std::map<std::tuple<std::string, std::string, int>, std::string> names;
    for (const auto& r : cat.fol_rows()) {
      names[{r.obj, r.col, r.fuzzy_id}] = r.fuzzy_name;
      ids_[{r.obj, r.col, r.fuzzy_name}] = r.fuzzy_id;
    }
    for (const auto& r : cat.fld_rows()) {
      shapes_[{r.obj, r.col, names.at({r.obj, r.col, r.fuzzy_id})}] = {r.alfa, r.beta, r.gamma, r.delta};
    }
    for (const auto& r : cat.fnd_rows()) {
      near_[{r.obj, r.col, r.id1, r.id2}] = r.degree;
      near_[{r.obj, r.col, r.id2, r.id1}] = r.degree;
    }
  }

  Trap shape(const fuzzydb::CatalogBinding& b, const std::string& label) const {
    return shapes_.at({b.obj, b.col, label});
  }

  double similarity(const fuzzydb::CatalogBinding& b, const std::string& x, const std::string& y) const {
    const int i = ids_.at({b.obj, b.col, x});
    const int j = ids_.at({b.obj, b.col, y});
    if (i == j) return 1.0;
    const auto it = near_.find({b.obj, b.col, i, j});
    return it == near_.end() ? 0.0 : it->second;
  }

 private:
  std::map<std::tuple<std::string, std::string, std::string>, Trap> shapes_;
  std::map<std::tuple<std::string, std::string, std::string>, int> ids_;
  std::map<std::tuple<std::string, std::string, int, int>, double> near_;
};

// 0 = known value, 1 = UNKNOWN, 2 = UNDEFINED or NULL.
template <typename V>
int marker_of(const V& v) {
  if (std::holds_alternative<fuzzydb::Unknown>(v)) return 1;
  if (std::holds_alternative<fuzzydb::Undefined>(v) || std::holds_alternative<fuzzydb::Null>(v)) return 2;
  return 0;
}

template <typename V>
std::optional<Trap> ordered_shape(const V& v, const fuzzydb::CatalogBinding* b, const Lookups& lk) {
  if (const auto* x = std::get_if<fuzzydb::Crisp>(&v)) return Trap{x->value, x->value, x->value, x->value};
  if (const auto* x = std::get_if<fuzzydb::LabelRef>(&v)) return lk.shape(*b, x->name);
  if (const auto* x = std::get_if<fuzzydb::Interval>(&v)) return Trap{x->lo, x->lo, x->hi, x->hi};
  if (const auto* x = std::get_if<fuzzydb::Approx>(&v)) {
    return Trap{x->center - x->margin, x->center, x->center, x->center + x->margin};
  }
  if (const auto* x = std::get_if<fuzzydb::Trapezoid>(&v)) {
    return Trap{x->alpha(), x->beta(), x->gamma(), x->delta()};
  }
  return std::nullopt;
}

inline std::vector<std::pair<double, std::string>> scalar_pairs(const fuzzydb::FuzzyConstant& k) {
  std::vector<std::pair<double, std::string>> out;
  if (const auto* l = std::get_if<fuzzydb::LabelRef>(&k.value)) out.emplace_back(1.0, l->name);
  if (const auto* s = std::get_if<fuzzydb::Simple>(&k.value)) {
    out.emplace_back(s->pair.possibility(), s->pair.label());
  }
  if (const auto* d = std::get_if<fuzzydb::PossDist>(&k.value)) {
    for (const auto& p : d->pairs) out.emplace_back(p.possibility(), p.label());
  }
  return out;
}

/// Raw degree of one atom on one tuple.
inline double atom_degree(const fuzzydb::Relation& rel, const fuzzydb::Tuple& t,
                          const fuzzydb::Atom& atom, const Lookups& lk) {
  using namespace fuzzydb;
  const std::size_t idx = *rel.column_index(atom.column);
  const ColumnSpec& spec = rel.schema()[idx];
  const CellValue& cell = t.values[idx];
  const auto& k = atom.constant;
  const CatalogBinding* b = spec.binding ? &*spec.binding : nullptr;

  if (spec.kind == ColumnKind::CrispText) {
    return std::get<std::string>(cell) == std::get<TextLiteral>(k.value).value ? 1.0 : 0.0;
  }
  if (spec.kind == ColumnKind::Type3) {
    const auto& v = std::get<FuzzyValue3>(cell);
    const int mv = marker_of(v.get());
    const int mk = marker_of(k.value);
    if (mv == 2 || mk == 2) return 0.0;
    if (mv == 1 || mk == 1) return 1.0;
    double best = 0.0;
    for (const auto& p : v.pairs()) {
      for (const auto& [q, e] : scalar_pairs(k)) {
        best = std::max(best, std::min({p.possibility(), q, lk.similarity(*b, p.label(), e)}));
      }
    }
    return best;
  }
  // Ordered domain: crisp numbers are point distributions.
  std::optional<Trap> stored;
  int mv = 0;
  if (const auto* x = std::get_if<double>(&cell)) {
    stored = Trap{*x, *x, *x, *x};
  } else {
    const auto& v = std::get<FuzzyValue2>(cell).get();
    mv = marker_of(v);
    stored = ordered_shape(v, b, lk);
  }
  const int mk = marker_of(k.value);
  if (mv == 2 || mk == 2) return 0.0;
  if (mv == 1 || mk == 1) return 1.0;
  return closed_possibility(*stored, *ordered_shape(k.value, b, lk));
}

/// Condition degree; when `only` is set, atoms on other columns are dropped
/// and a connective with one surviving side passes that side through.
inline std::optional<double> condition_degree(const fuzzydb::Relation& rel, const fuzzydb::Tuple& t,
                                              const fuzzydb::Condition& c, const Lookups& lk,
                                              const std::string* only = nullptr) {
  using K = fuzzydb::Condition::Kind;
  switch (c.kind) {
    case K::Atom: {
      if (only && c.atom.column != *only) return std::nullopt;
      const double d = atom_degree(rel, t, c.atom, lk);
      return d >= c.atom.threshold.value_or(1.0) ? d : 0.0;
    }
    case K::Not: {
      const auto x = condition_degree(rel, t, c.children[0], lk, only);
      if (!x) return std::nullopt;
      return 1.0 - *x;
    }
    case K::And:
    case K::Or: {
      const auto l = condition_degree(rel, t, c.children[0], lk, only);
      const auto r = condition_degree(rel, t, c.children[1], lk, only);
      if (!l) return r;
      if (!r) return l;
      return c.kind == K::And ? std::min(*l, *r) : std::max(*l, *r);
    }
  }
  return std::nullopt;
}

struct Row {
  std::size_t index;
  double degree;
  std::vector<double> cdeg;  // one per CDEG item of the projection, in order
};

/// Tuple-at-a-time evaluation of a whole query.
inline std::vector<Row> evaluate(const fuzzydb::QueryAst& q, const fuzzydb::Relation& rel,
                                 const fuzzydb::Catalog& cat) {
  const Lookups lk{cat};
  std::vector<Row> out;
  const auto tuples = rel.tuples();
  for (std::size_t i = 0; i < tuples.size(); ++i) {
    const double whole = q.where ? *condition_degree(rel, tuples[i], *q.where, lk) : 1.0;
    if (!(whole > 0.0)) continue;
    Row row{i, whole, {}};
    for (const auto& p : q.projection) {
      if (p.kind == fuzzydb::Projection::Kind::CdegStar) row.cdeg.push_back(whole);
      if (p.kind == fuzzydb::Projection::Kind::Cdeg) {
        row.cdeg.push_back(*condition_degree(rel, tuples[i], *q.where, lk, &p.column));
      }
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace oracle
