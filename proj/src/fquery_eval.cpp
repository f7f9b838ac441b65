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
#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

#include "fuzzydb/error.hpp"
#include "fuzzydb/fquery.hpp"
#include "fuzzydb/kernels.hpp"
#include "fuzzydb/text.hpp"

namespace fuzzydb {

namespace {

template <typename... Ts>
struct Overload : Ts... {
  using Ts::operator()...;
};
template <typename... Ts>
Overload(Ts...) -> Overload<Ts...>;

bool is_marker(const FuzzyConstant& c) {
  return std::holds_alternative<Unknown>(c.value) || std::holds_alternative<Undefined>(c.value) ||
         std::holds_alternative<Null>(c.value);
}

bool compatible(const FuzzyConstant& c, ColumnKind kind) {
  const auto& v = c.value;
  switch (kind) {
    case ColumnKind::CrispText:
      return std::holds_alternative<TextLiteral>(v);
    case ColumnKind::CrispNumeric:
      return is_marker(c) || std::holds_alternative<Crisp>(v) ||
             std::holds_alternative<Interval>(v) || std::holds_alternative<Approx>(v) ||
             std::holds_alternative<Trapezoid>(v);
    case ColumnKind::Type1:
    case ColumnKind::Type2:
      return is_marker(c) || std::holds_alternative<Crisp>(v) ||
             std::holds_alternative<LabelRef>(v) || std::holds_alternative<Interval>(v) ||
             std::holds_alternative<Approx>(v) || std::holds_alternative<Trapezoid>(v);
    case ColumnKind::Type3:
      return is_marker(c) || std::holds_alternative<LabelRef>(v) ||
             std::holds_alternative<PossDist>(v) || std::holds_alternative<Simple>(v);
  }
  return false;
}

[[noreturn]] void incompatible(const FuzzyConstant& c, const ColumnSpec& spec) {
  throw Error(ErrorCode::TypeIncompatible, "constant " + render_constant(c) +
                                               " cannot be compared with " +
                                               std::string(column_kind_name(spec.kind)) +
                                               " column '" + spec.name + "'");
}

FuzzyValue2 as_value2(const FuzzyConstant& c) {
  return std::visit(
      Overload{
          [](const Unknown&) { return FuzzyValue2::unknown(); },
          [](const Undefined&) { return FuzzyValue2::undefined(); },
          [](const Null&) { return FuzzyValue2::null(); },
          [](const Crisp& v) { return FuzzyValue2::crisp(v.value); },
          [](const LabelRef& l) { return FuzzyValue2::label(l.name); },
          [](const Interval& i) { return FuzzyValue2::interval(i.lo, i.hi); },
          [](const Approx& a) { return FuzzyValue2::approx(a.center, a.margin); },
          [](const Trapezoid& t) { return FuzzyValue2::trapezoid(t); },
          [](const auto&) -> FuzzyValue2 {
            throw Error(ErrorCode::TypeIncompatible, "not an ordered-domain constant");
          },
      },
      c.value);
}

FuzzyValue3 as_value3(const FuzzyConstant& c) {
  return std::visit(
      Overload{
          [](const Unknown&) { return FuzzyValue3::unknown(); },
          [](const Undefined&) { return FuzzyValue3::undefined(); },
          [](const Null&) { return FuzzyValue3::null(); },
          [](const LabelRef& l) { return FuzzyValue3::simple(PossPair{1.0, l.name}); },
          [](const Simple& s) { return FuzzyValue3::simple(s.pair); },
          [](const PossDist& d) { return FuzzyValue3::distribution(d.pairs); },
          [](const auto&) -> FuzzyValue3 {
            throw Error(ErrorCode::TypeIncompatible, "not a scalar-domain constant");
          },
      },
      c.value);
}

LabelResolver resolver_for(const ColumnSpec& spec, const Catalog& catalog) {
  if (!spec.binding) return {};
  const CatalogBinding b = *spec.binding;
  return [&catalog, b](std::string_view name) {
    return catalog.trapezoid_of_label(b.obj, b.col, name);
  };
}

std::size_t resolve_column(const Relation& rel, std::string_view name) {
  const auto idx = rel.column_index(name);
  if (!idx) {
    throw Error(ErrorCode::NoSuchColumn,
                "table '" + rel.name() + "' has no column '" + std::string(name) + "'");
  }
  return *idx;
}

void collect_columns(const Condition& c, std::vector<std::string>& out) {
  if (c.kind == Condition::Kind::Atom) {
    if (std::find(out.begin(), out.end(), c.atom.column) == out.end()) out.push_back(c.atom.column);
    return;
  }
  for (const auto& child : c.children) collect_columns(child, out);
}

void check_condition(const Condition& c, const Relation& rel, const Catalog& catalog) {
  if (c.kind != Condition::Kind::Atom) {
    for (const auto& child : c.children) check_condition(child, rel, catalog);
    return;
  }
  const auto& spec = rel.schema()[resolve_column(rel, c.atom.column)];
  const auto& k = c.atom.constant;
  if (!compatible(k, spec.kind)) incompatible(k, spec);
  const auto* label = std::get_if<LabelRef>(&k.value);
  if (label && spec.binding) {
    catalog.label_id_by_name(spec.binding->obj, spec.binding->col, label->name);
  }
}

// Degrees of one atom across every tuple, before the threshold.
std::vector<double> atom_degrees(const Relation& rel, const Atom& atom, const Catalog& catalog) {
  const std::size_t idx = resolve_column(rel, atom.column);
  const ColumnSpec& spec = rel.schema()[idx];
  const auto& k = atom.constant;
  if (!compatible(k, spec.kind)) incompatible(k, spec);
  const auto tuples = rel.tuples();
  const std::size_t n = tuples.size();
  std::vector<double> out(n, 0.0);

  switch (spec.kind) {
    case ColumnKind::CrispText: {
      const auto& text = std::get<TextLiteral>(k.value).value;
      for (std::size_t i = 0; i < n; ++i) {
        out[i] = std::get<std::string>(tuples[i].values[idx]) == text ? 1.0 : 0.0;
      }
      return out;
    }
    case ColumnKind::CrispNumeric:
    case ColumnKind::Type1: {
      const FuzzyValue2 probe = as_value2(k);
      if (probe.is_special()) {
        std::fill(out.begin(), out.end(), probe.tag() == 0 ? 1.0 : 0.0);
        return out;
      }
      const Trapezoid t = *to_trapezoid(probe, resolver_for(spec, catalog));
      std::vector<double> xs(n);
      for (std::size_t i = 0; i < n; ++i) xs[i] = std::get<double>(tuples[i].values[idx]);
      kernels::membership(t, xs, out);
      return out;
    }
    case ColumnKind::Type2: {
      const FuzzyValue2 probe = as_value2(k);
      const LabelResolver resolve = resolver_for(spec, catalog);
      if (probe.is_special()) {
        for (std::size_t i = 0; i < n; ++i) {
          const auto& v = std::get<FuzzyValue2>(tuples[i].values[idx]);
          out[i] = feq_type2(v, probe, resolve).value();
        }
        return out;
      }
      const Trapezoid t = *to_trapezoid(probe, resolve);
      std::vector<double> a(n, 0.0), b(n, 0.0), c(n, 0.0), d(n, 0.0);
      std::map<std::string, Trapezoid, std::less<>> labels;
      for (std::size_t i = 0; i < n; ++i) {
        const auto& v = std::get<FuzzyValue2>(tuples[i].values[idx]);
        if (v.is_special()) continue;
        std::optional<Trapezoid> shape;
        if (const auto* l = std::get_if<LabelRef>(&v.get())) {
          auto it = labels.find(l->name);
          if (it == labels.end()) it = labels.emplace(l->name, resolve(l->name)).first;
          shape = it->second;
        } else {
          shape = to_trapezoid(v, resolve);
        }
        a[i] = shape->alpha();
        b[i] = shape->beta();
        c[i] = shape->gamma();
        d[i] = shape->delta();
      }
      kernels::possibility(t, kernels::TrapezoidColumns{a, b, c, d}, out);
      for (std::size_t i = 0; i < n; ++i) {
        const auto& v = std::get<FuzzyValue2>(tuples[i].values[idx]);
        if (v.is_special()) out[i] = v.tag() == 0 ? 1.0 : 0.0;
      }
      return out;
    }
    case ColumnKind::Type3: {
      const FuzzyValue3 probe = as_value3(k);
      if (probe.is_special()) {
        for (std::size_t i = 0; i < n; ++i) {
          const auto& v = std::get<FuzzyValue3>(tuples[i].values[idx]);
          out[i] = (v.tag() == 1 || v.tag() == 2 || probe.tag() != 0) ? 0.0 : 1.0;
        }
        return out;
      }
      const SimilarityRelation sim =
          catalog.similarity_relation_of_column(spec.binding->obj, spec.binding->col);
      // best[e] = max_j min(q_j, s(e, e_j)), so each tuple costs one lookup per pair.
      std::vector<std::pair<int, double>> probe_ids;
      for (const auto& q : probe.pairs()) probe_ids.emplace_back(sim.id_of(q.label()), q.possibility());
      std::map<std::string, double, std::less<>> best;
      for (const auto& [id, name] : sim.labels()) {
        double m = 0.0;
        for (const auto& [qid, q] : probe_ids) m = std::max(m, std::min(q, sim.degree(id, qid).value()));
        best.emplace(name, m);
      }
      for (std::size_t i = 0; i < n; ++i) {
        const auto& v = std::get<FuzzyValue3>(tuples[i].values[idx]);
        if (v.is_special()) {
          out[i] = v.tag() == 0 ? 1.0 : 0.0;
          continue;
        }
        double m = 0.0;
        for (const auto& p : v.pairs()) {
          const auto it = best.find(p.label());
          if (it == best.end()) sim.id_of(p.label());  // throws UnknownLabel
          m = std::max(m, std::min(p.possibility(), it->second));
        }
        out[i] = m;
      }
      return out;
    }
  }
  return out;
}

std::string degree_text(double d) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", d);
  return buf;
}

std::string table_cell(const ResultCell& c) {
  if (const auto* d = std::get_if<double>(&c)) return degree_text(*d);
  const auto& v = std::get<CellValue>(c);
  if (const auto* s = std::get_if<std::string>(&v)) return *s;
  return render_cell(v);
}

}  // namespace

CellValue constant_to_cell(const FuzzyConstant& c, const ColumnSpec& spec) {
  switch (spec.kind) {
    case ColumnKind::CrispNumeric:
    case ColumnKind::Type1:
      if (const auto* v = std::get_if<Crisp>(&c.value)) return v->value;
      break;
    case ColumnKind::CrispText:
      if (const auto* v = std::get_if<TextLiteral>(&c.value)) return v->value;
      break;
    case ColumnKind::Type2:
      if (!std::holds_alternative<Simple>(c.value) && compatible(c, spec.kind)) return as_value2(c);
      break;
    case ColumnKind::Type3:
      if (compatible(c, spec.kind)) return as_value3(c);
      break;
  }
  incompatible(c, spec);
}

std::vector<std::string> atom_columns(const Condition& c) {
  std::vector<std::string> out;
  collect_columns(c, out);
  return out;
}

std::optional<Condition> restrict_to_column(const Condition& c, std::string_view column) {
  switch (c.kind) {
    case Condition::Kind::Atom:
      if (c.atom.column == column) return c;
      return std::nullopt;
    case Condition::Kind::Not: {
      auto inner = restrict_to_column(c.children[0], column);
      if (!inner) return std::nullopt;
      return Condition::make_not(std::move(*inner));
    }
    case Condition::Kind::And:
    case Condition::Kind::Or: {
      auto l = restrict_to_column(c.children[0], column);
      auto r = restrict_to_column(c.children[1], column);
      if (!l) return r;
      if (!r) return l;
      return c.kind == Condition::Kind::And ? Condition::make_and(std::move(*l), std::move(*r))
                                            : Condition::make_or(std::move(*l), std::move(*r));
    }
  }
  return std::nullopt;
}

void check_query(const QueryAst& q, const Relation& rel) {
  for (const auto& p : q.projection) {
    if (p.kind == Projection::Kind::Column || p.kind == Projection::Kind::Cdeg) {
      resolve_column(rel, p.column);
    }
  }
  if (!q.where) return;
  // Label names are checked at evaluation time against the catalog.
  std::vector<const Condition*> stack{&*q.where};
  while (!stack.empty()) {
    const Condition* c = stack.back();
    stack.pop_back();
    if (c->kind != Condition::Kind::Atom) {
      for (const auto& child : c->children) stack.push_back(&child);
      continue;
    }
    const auto& spec = rel.schema()[resolve_column(rel, c->atom.column)];
    if (!compatible(c->atom.constant, spec.kind)) incompatible(c->atom.constant, spec);
  }
}

AtomEvaluation eval_atom(const Relation& rel, const Tuple& tuple, const Atom& atom,
                         const Catalog& catalog) {
  const std::size_t idx = resolve_column(rel, atom.column);
  const ColumnSpec& spec = rel.schema()[idx];
  const auto& k = atom.constant;
  if (!compatible(k, spec.kind)) incompatible(k, spec);
  const CellValue& cell = tuple.values.at(idx);
  MembershipDegree degree;
  switch (spec.kind) {
    case ColumnKind::CrispText:
      degree = std::get<std::string>(cell) == std::get<TextLiteral>(k.value).value
                   ? MembershipDegree::one()
                   : MembershipDegree::zero();
      break;
    case ColumnKind::CrispNumeric:
    case ColumnKind::Type1:
      degree = feq_type2(FuzzyValue2::crisp(std::get<double>(cell)), as_value2(k),
                         resolver_for(spec, catalog));
      break;
    case ColumnKind::Type2:
      degree = feq_type2(std::get<FuzzyValue2>(cell), as_value2(k), resolver_for(spec, catalog));
      break;
    case ColumnKind::Type3:
      degree = feq_type3(std::get<FuzzyValue3>(cell), as_value3(k),
                         catalog.similarity_relation_of_column(spec.binding->obj,
                                                               spec.binding->col));
      break;
  }
  return {degree, degree.value() >= atom.effective_threshold()};
}

MembershipDegree eval_condition(const Relation& rel, const Tuple& tuple, const Condition& cond,
                                const Catalog& catalog) {
  switch (cond.kind) {
    case Condition::Kind::Atom: {
      const auto e = eval_atom(rel, tuple, cond.atom, catalog);
      return e.satisfied ? e.degree : MembershipDegree::zero();
    }
    case Condition::Kind::Not:
      return MembershipDegree{1.0 - eval_condition(rel, tuple, cond.children[0], catalog).value()};
    case Condition::Kind::And:
      return std::min(eval_condition(rel, tuple, cond.children[0], catalog),
                      eval_condition(rel, tuple, cond.children[1], catalog));
    case Condition::Kind::Or:
      return std::max(eval_condition(rel, tuple, cond.children[0], catalog),
                      eval_condition(rel, tuple, cond.children[1], catalog));
  }
  return MembershipDegree::zero();
}

std::vector<double> condition_degrees(const Condition& c, const Relation& rel,
                                      const Catalog& catalog) {
  switch (c.kind) {
    case Condition::Kind::Atom: {
      auto out = atom_degrees(rel, c.atom, catalog);
      kernels::threshold_cut(out, c.atom.effective_threshold());
      return out;
    }
    case Condition::Kind::Not: {
      auto out = condition_degrees(c.children[0], rel, catalog);
      kernels::complement(out);
      return out;
    }
    case Condition::Kind::And:
    case Condition::Kind::Or: {
      auto out = condition_degrees(c.children[0], rel, catalog);
      const auto rhs = condition_degrees(c.children[1], rel, catalog);
      if (c.kind == Condition::Kind::And) {
        kernels::min_into(out, rhs);
      } else {
        kernels::max_into(out, rhs);
      }
      return out;
    }
  }
  return {};
}

QueryResult run_query(const QueryAst& q, const Relation& rel, const Catalog& catalog) {
  if (q.table != rel.name()) {
    throw Error(ErrorCode::NoSuchTable, "no table named '" + q.table + "'");
  }
  check_query(q, rel);
  if (q.where) check_condition(*q.where, rel, catalog);

  const std::size_t n = rel.size();
  const std::vector<double> whole =
      q.where ? condition_degrees(*q.where, rel, catalog) : std::vector<double>(n, 1.0);

  QueryResult r;
  // One entry per projected item: column index, or the degree vector to read.
  std::vector<std::variant<std::size_t, std::vector<double>>> sources;
  for (const auto& p : q.projection) {
    switch (p.kind) {
      case Projection::Kind::Star:
        for (std::size_t i = 0; i < rel.schema().size(); ++i) {
          r.headers.push_back(rel.schema()[i].name);
          sources.emplace_back(i);
        }
        break;
      case Projection::Kind::Column:
        r.headers.push_back(p.column);
        sources.emplace_back(*rel.column_index(p.column));
        break;
      case Projection::Kind::CdegStar:
        r.headers.push_back("CDEG(*)");
        sources.emplace_back(whole);
        break;
      case Projection::Kind::Cdeg: {
        r.headers.push_back("CDEG(" + p.column + ")");
        const auto sub = q.where ? restrict_to_column(*q.where, p.column) : std::nullopt;
        if (!sub) {
          throw Error(ErrorCode::NoSuchColumn,
                      "CDEG(" + p.column + ") names a column without a condition");
        }
        sources.emplace_back(condition_degrees(*sub, rel, catalog));
        break;
      }
    }
  }

  const auto tuples = rel.tuples();
  for (std::size_t i = 0; i < n; ++i) {
    if (!(whole[i] > 0.0)) continue;
    std::vector<ResultCell> row;
    row.reserve(sources.size());
    for (const auto& s : sources) {
      if (const auto* col = std::get_if<std::size_t>(&s)) {
        row.emplace_back(std::in_place_index<0>, tuples[i].values[*col]);
      } else {
        row.emplace_back(std::in_place_index<1>, std::get<std::vector<double>>(s)[i]);
      }
    }
    r.source_rows.push_back(i);
    r.rows.push_back(std::move(row));
    r.degrees.push_back(whole[i]);
  }
  return r;
}

QueryResult run_query(const QueryAst& q, const Database& db) {
  return run_query(q, db.table(q.table), db.catalog());
}

std::string format_result_table(const QueryResult& r) {
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(r.headers.size(), 0);
  for (std::size_t j = 0; j < r.headers.size(); ++j) width[j] = r.headers[j].size();
  for (const auto& row : r.rows) {
    std::vector<std::string> line;
    for (std::size_t j = 0; j < row.size(); ++j) {
      line.push_back(table_cell(row[j]));
      width[j] = std::max(width[j], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  std::ostringstream out;
  auto emit = [&](const std::vector<std::string>& line) {
    for (std::size_t j = 0; j < line.size(); ++j) {
      if (j) out << " | ";
      out << line[j];
      if (j + 1 < line.size()) out << std::string(width[j] - line[j].size(), ' ');
    }
    out << '\n';
  };
  emit(r.headers);
  for (std::size_t j = 0; j < width.size(); ++j) {
    if (j) out << "-+-";
    out << std::string(width[j], '-');
  }
  out << '\n';
  for (const auto& line : cells) emit(line);
  out << '(' << r.rows.size() << (r.rows.size() == 1 ? " row)" : " rows)") << '\n';
  return out.str();
}

std::string format_result_json(const QueryResult& r) {
  nlohmann::ordered_json doc;
  doc["columns"] = r.headers;
  auto rows = nlohmann::json::array();
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    auto row = nlohmann::json::array();
    for (const auto& c : r.rows[i]) {
      if (const auto* d = std::get_if<double>(&c)) {
        row.push_back(*d);
        continue;
      }
      const auto& v = std::get<CellValue>(c);
      if (const auto* x = std::get_if<double>(&v)) {
        row.push_back(*x);
      } else if (const auto* s = std::get_if<std::string>(&v)) {
        row.push_back(*s);
      } else {
        row.push_back(render_cell(v));
      }
    }
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  doc["degrees"] = r.degrees;
  return doc.dump(2) + "\n";
}

}  // namespace fuzzydb
