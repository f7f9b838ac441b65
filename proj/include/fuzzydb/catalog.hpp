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

// The fuzzy metaknowledge base: four catalog tables describing which
// columns are fuzzy and how their labels are defined.
//
//   FCL  (obj, col, f_type, len)             fuzzy columns
//   FOL  (obj, col, fuzzy_id, name, type)    labels; type 0 trapezoid, 1 scalar
//   FLD  (obj, col, fuzzy_id, a, b, c, d)    trapezoid of each type-0 label
//   FND  (obj, col, id1, id2, degree)        similarity of two scalar labels
//
// Rows must arrive in dependency order FCL -> FOL -> FLD/FND. Every mutating
// call either applies completely or throws and leaves the catalog untouched.

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <variant>
#include <vector>

#include "fuzzydb/fuzzy_core.hpp"

namespace fuzzydb {

struct FclRow {
  std::string obj;
  std::string col;
  int f_type = 0;
  int len = 0;
  friend bool operator==(const FclRow&, const FclRow&) = default;
};

struct FolRow {
  std::string obj;
  std::string col;
  int fuzzy_id = 0;
  std::string fuzzy_name;
  int fuzzy_type = 0;
  friend bool operator==(const FolRow&, const FolRow&) = default;
};

struct FldRow {
  std::string obj;
  std::string col;
  int fuzzy_id = 0;
  double alfa = 0, beta = 0, gamma = 0, delta = 0;
  friend bool operator==(const FldRow&, const FldRow&) = default;
};

struct FndRow {
  std::string obj;
  std::string col;
  int id1 = 0;
  int id2 = 0;
  double degree = 0;
  friend bool operator==(const FndRow&, const FndRow&) = default;
};

inline constexpr int kTrapezoidLabel = 0;
inline constexpr int kScalarLabel = 1;

enum class PopulationState {
  ColumnDeclared,      // FCL row only
  AwaitingTrapezoids,  // some type-0 label has no FLD row yet
  Complete,
};

struct Violation {
  enum class Severity { Error, Warning };
  Severity severity = Severity::Error;
  std::string kind;
  std::string obj;
  std::string col;
  std::string message;
  std::size_t line = 0;  // source line when produced by a file loader
};

class Catalog {
 public:
  void register_column(const FclRow& row);
  void define_label(const FolRow& row);
  void define_trapezoid(const FldRow& row);
  void define_similarity(const FndRow& row);

  /// Completeness check; warnings (label id gaps) do not make a catalog invalid.
  std::vector<Violation> validate() const;
  bool is_valid() const;

  bool has_column(std::string_view obj, std::string_view col) const;
  const FclRow& column_meta(std::string_view obj, std::string_view col) const;
  PopulationState state(std::string_view obj, std::string_view col) const;

  int label_id_by_name(std::string_view obj, std::string_view col, std::string_view name) const;
  const std::string& label_name_by_id(std::string_view obj, std::string_view col, int id) const;
  bool has_label_id(std::string_view obj, std::string_view col, int id) const;
  Trapezoid trapezoid_of_label(std::string_view obj, std::string_view col, int id) const;
  Trapezoid trapezoid_of_label(std::string_view obj, std::string_view col,
                               std::string_view name) const;
  SimilarityRelation similarity_relation_of_column(std::string_view obj,
                                                   std::string_view col) const;

  // Table contents: columns in declaration order, labels and pairs by id.
  std::vector<FclRow> fcl_rows() const;
  std::vector<FolRow> fol_rows() const;
  std::vector<FldRow> fld_rows() const;
  std::vector<FndRow> fnd_rows() const;

  bool empty() const noexcept { return columns_.empty(); }

  friend bool operator==(const Catalog&, const Catalog&) = default;

 private:
  struct LabelEntry {
    FolRow row;
    std::optional<Trapezoid> shape;
    friend bool operator==(const LabelEntry&, const LabelEntry&) = default;
  };
  struct ColumnEntry {
    FclRow meta;
    std::map<int, LabelEntry> labels;
    std::map<std::pair<int, int>, double> nearness;
    friend bool operator==(const ColumnEntry&, const ColumnEntry&) = default;
  };

  const ColumnEntry* find(std::string_view obj, std::string_view col) const;
  ColumnEntry* find(std::string_view obj, std::string_view col);
  const ColumnEntry& get(std::string_view obj, std::string_view col) const;
  const LabelEntry& label(std::string_view obj, std::string_view col, int id) const;

  std::vector<ColumnEntry> columns_;
};

/// Naming used when rendering loader scripts. Identifiers are derived as
/// t_<OBJ> and c_<O><COL>; the USER path defaults to '.<obj>.<col>' and the
/// label text to the upper-cased label name. Overrides replace the derived
/// path or label text for individual rows.
struct ScriptNaming {
  std::map<std::pair<std::string, std::string>, std::string> user_paths;
  std::map<std::tuple<std::string, std::string, int>, std::string> label_texts;
  friend bool operator==(const ScriptNaming&, const ScriptNaming&) = default;
};

struct CatalogDocument {
  Catalog catalog;
  ScriptNaming naming;
  friend bool operator==(const CatalogDocument&, const CatalogDocument&) = default;
};

struct UserPathOverride {
  std::string obj, col, path;
  friend bool operator==(const UserPathOverride&, const UserPathOverride&) = default;
};
struct LabelTextOverride {
  std::string obj, col;
  int fuzzy_id = 0;
  std::string text;
  friend bool operator==(const LabelTextOverride&, const LabelTextOverride&) = default;
};

/// One parsed line of a catalog definition, in either accepted dialect.
struct CatalogRecord {
  std::size_t line = 0;
  std::variant<FclRow, FolRow, FldRow, FndRow, UserPathOverride, LabelTextOverride> row;
};

struct CatalogLoadResult {
  CatalogDocument document;
  std::vector<Violation> violations;  // errors and warnings

  bool ok() const;
};

/// Applies records in dependency order regardless of their order in the
/// file, collecting a violation for every rejected record, then validates.
CatalogLoadResult build_catalog(const std::vector<CatalogRecord>& records);

/// Parses either the sectioned definition format or the INSERT dialect
/// produced by emit_loader_script. Throws SyntaxError on malformed text.
std::vector<CatalogRecord> parse_catalog_text(std::string_view text);

CatalogLoadResult load_catalog_text(std::string_view text);

/// Sectioned definition format; parse_catalog_text reads it back.
std::string write_catalog_definition(const CatalogDocument& doc);

/// The four tables with their column headers, one ' | '-separated row per line.
std::string dump_catalog_tables(const Catalog& catalog);

}  // namespace fuzzydb
