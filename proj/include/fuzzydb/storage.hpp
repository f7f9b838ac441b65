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

// Base relations whose columns are crisp, Type-1 (crisp with labels),
// Type-2 or Type-3 fuzzy, plus file persistence in the physical layout of
// the encoding module.

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fuzzydb/catalog.hpp"
#include "fuzzydb/fuzzy_core.hpp"

namespace fuzzydb {

enum class ColumnKind { CrispNumeric, CrispText, Type1, Type2, Type3 };

std::string_view column_kind_name(ColumnKind kind);
std::optional<ColumnKind> parse_column_kind(std::string_view name);
inline bool is_crisp(ColumnKind k) { return k == ColumnKind::CrispNumeric || k == ColumnKind::CrispText; }

struct CatalogBinding {
  std::string obj;
  std::string col;
  friend bool operator==(const CatalogBinding&, const CatalogBinding&) = default;
};

struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::CrispNumeric;
  std::optional<CatalogBinding> binding;  // required for Type1/2/3
  friend bool operator==(const ColumnSpec&, const ColumnSpec&) = default;
};

/// double for CrispNumeric and Type1, std::string for CrispText.
using CellValue = std::variant<double, std::string, FuzzyValue2, FuzzyValue3>;

struct Tuple {
  std::vector<CellValue> values;
  friend bool operator==(const Tuple&, const Tuple&) = default;
};

class Relation {
 public:
  /// Throws UnboundFuzzyColumn, KeyNotCrisp, NoSuchColumn (key names) or
  /// InvalidValue (empty or duplicate column names).
  Relation(std::string name, std::vector<ColumnSpec> schema,
           const std::vector<std::string>& primary_key, const Catalog& catalog);

  const std::string& name() const noexcept { return name_; }
  const std::vector<ColumnSpec>& schema() const noexcept { return schema_; }
  const std::vector<std::size_t>& key_columns() const noexcept { return key_; }
  std::optional<std::size_t> column_index(std::string_view name) const;

  /// Checks the tuple against the schema and the catalog, then appends it.
  void insert(Tuple tuple, const Catalog& catalog);

  std::span<const Tuple> tuples() const noexcept { return tuples_; }
  std::size_t size() const noexcept { return tuples_.size(); }

  friend bool operator==(const Relation& a, const Relation& b) {
    return a.name_ == b.name_ && a.schema_ == b.schema_ && a.key_ == b.key_ &&
           a.tuples_ == b.tuples_;
  }

 private:
  std::string key_of(const Tuple& t) const;

  std::string name_;
  std::vector<ColumnSpec> schema_;
  std::vector<std::size_t> key_;
  std::vector<Tuple> tuples_;
  std::set<std::string> keys_;
};

/// Validates one cell against its column; throws TypeIncompatible,
/// UnknownLabel or TooManyPairs.
void check_cell(const ColumnSpec& spec, const CellValue& value, const Catalog& catalog);

/// FNV-1a over the canonical catalog definition; recorded in table files.
std::uint64_t catalog_fingerprint(const Catalog& catalog);

/// Line-oriented table format: header lines naming the schema and catalog
/// fingerprint, then one tab-separated record per tuple with fuzzy cells
/// flattened to FT + fields.
std::string serialize_relation(const Relation& rel, const Catalog& catalog);
/// Throws MalformedRow or CatalogMismatch.
Relation deserialize_relation(std::string_view text, const Catalog& catalog);

void save_relation(const Relation& rel, const Catalog& catalog, const std::filesystem::path& path);
/// Throws IoFailure, MalformedRow or CatalogMismatch.
Relation load_relation(const std::filesystem::path& path, const Catalog& catalog);

/// A catalog plus the relations defined against it.
class Database {
 public:
  Database() = default;
  explicit Database(CatalogDocument doc) : doc_(std::move(doc)) {}

  const Catalog& catalog() const noexcept { return doc_.catalog; }
  const CatalogDocument& catalog_document() const noexcept { return doc_; }

  Relation& create_table(std::string name, std::vector<ColumnSpec> schema,
                         const std::vector<std::string>& primary_key);
  void add_table(Relation rel);
  void replace_table(Relation rel);

  bool has_table(std::string_view name) const;
  const Relation& table(std::string_view name) const;  // NoSuchTable
  Relation& table(std::string_view name);
  std::vector<std::string> table_names() const;

 private:
  CatalogDocument doc_;
  std::map<std::string, Relation, std::less<>> tables_;
};

}  // namespace fuzzydb
