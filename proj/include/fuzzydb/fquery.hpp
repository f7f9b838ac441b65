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

// Flexible-query mini-language: a subset of FSQL with fuzzy equality (FEQ),
// thresholds (THOLD) and compliance degrees (CDEG).
//
//   query := SELECT proj (',' proj)* FROM ident (WHERE cond)?
//   proj  := '*' | ident | CDEG '(' (ident | '*') ')'
//   cond  := cond OR cond | cond AND cond | NOT cond | '(' cond ')' | atom
//   atom  := ident FEQ fconst (THOLD number)?
//   fconst:= '$'ident | number | 'text' | '[' number ',' number ']'
//          | '#' number ('+-' number)? | '$[' number (',' number){3} ']'
//          | '{' number '/' ident (',' number '/' ident)* '}'
//          | UNKNOWN | UNDEFINED | NULL
//
// NOT binds tighter than AND, AND tighter than OR. Keywords are
// case-insensitive; identifiers and label names are not.

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fuzzydb/catalog.hpp"
#include "fuzzydb/fuzzy_core.hpp"
#include "fuzzydb/storage.hpp"

namespace fuzzydb {

struct TextLiteral {
  std::string value;
  friend bool operator==(const TextLiteral&, const TextLiteral&) = default;
};

/// A literal in a query or data file. `Simple` (written `p/Name`) only
/// appears in data files; a `$Name` constant on a Type-3 column means
/// possibility 1 for that label.
struct FuzzyConstant {
  using Variant = std::variant<Unknown, Undefined, Null, LabelRef, Crisp, Interval, Approx,
                               Trapezoid, PossDist, Simple, TextLiteral>;
  Variant value;
  friend bool operator==(const FuzzyConstant&, const FuzzyConstant&) = default;
};

struct Atom {
  std::string column;
  FuzzyConstant constant;
  std::optional<double> threshold;  // omitted means 1
  double effective_threshold() const { return threshold.value_or(1.0); }
  friend bool operator==(const Atom&, const Atom&) = default;
};

struct Condition {
  enum class Kind { Atom, And, Or, Not };
  Kind kind = Kind::Atom;
  fuzzydb::Atom atom;               // Kind::Atom
  std::vector<Condition> children;  // two for And/Or, one for Not

  static Condition make_atom(fuzzydb::Atom a);
  static Condition make_and(Condition l, Condition r);
  static Condition make_or(Condition l, Condition r);
  static Condition make_not(Condition c);

  friend bool operator==(const Condition&, const Condition&) = default;
};

struct Projection {
  enum class Kind { Star, Column, Cdeg, CdegStar };
  Kind kind = Kind::Star;
  std::string column;
  friend bool operator==(const Projection&, const Projection&) = default;
};

struct QueryAst {
  std::vector<Projection> projection;
  std::string table;
  std::optional<Condition> where;
  friend bool operator==(const QueryAst&, const QueryAst&) = default;
};

/// Throws SyntaxError with position and expected tokens.
QueryAst parse_query(std::string_view text);
/// Canonical text; parse_query(print_query(q)) == q.
std::string print_query(const QueryAst& q);
std::string print_condition(const Condition& c);

FuzzyConstant parse_constant(std::string_view text, bool allow_single_pair = false);
/// Comma-separated constants (a data-file row).
std::vector<FuzzyConstant> parse_constant_list(std::string_view text, bool allow_single_pair,
                                               std::size_t line = 1);
std::string render_constant(const FuzzyConstant& c);
/// Cell in literal syntax ("$Normal", "#8+-1", "{0.5/Englobado, 1/Sucio}").
std::string render_cell(const CellValue& v);

/// Converts a literal into a value of the given column; TypeIncompatible
/// when the literal cannot live there.
CellValue constant_to_cell(const FuzzyConstant& c, const ColumnSpec& spec);

/// Columns named in the atoms of `c`, in first-appearance order.
std::vector<std::string> atom_columns(const Condition& c);
/// `c` with every atom on another column removed; connectives left with a
/// single child collapse into it. nullopt when no atom mentions `column`.
std::optional<Condition> restrict_to_column(const Condition& c, std::string_view column);

/// Resolves column names and checks constant/column compatibility.
/// Throws NoSuchColumn or TypeIncompatible.
void check_query(const QueryAst& q, const Relation& rel);

struct AtomEvaluation {
  MembershipDegree degree;
  bool satisfied = false;
};

/// Raw matching degree of one tuple against an atom, before the threshold.
AtomEvaluation eval_atom(const Relation& rel, const Tuple& tuple, const Atom& atom,
                         const Catalog& catalog);
/// Atom -> degree if >= threshold else 0; AND min; OR max; NOT 1 - x.
MembershipDegree eval_condition(const Relation& rel, const Tuple& tuple, const Condition& cond,
                                const Catalog& catalog);

using ResultCell = std::variant<CellValue, double>;  // double = compliance degree

struct QueryResult {
  std::vector<std::string> headers;
  std::vector<std::size_t> source_rows;  // scan position of each result row
  std::vector<std::vector<ResultCell>> rows;
  std::vector<double> degrees;  // whole-condition degree per result row
};

/// Column-at-a-time evaluation over the relation. Rows with a positive
/// whole-condition degree are returned in scan order.
QueryResult run_query(const QueryAst& q, const Relation& rel, const Catalog& catalog);
QueryResult run_query(const QueryAst& q, const Database& db);

/// Whole-condition degree of every tuple (1 everywhere without WHERE).
std::vector<double> condition_degrees(const Condition& c, const Relation& rel,
                                      const Catalog& catalog);

std::string format_result_table(const QueryResult& r);
std::string format_result_json(const QueryResult& r);

}  // namespace fuzzydb
