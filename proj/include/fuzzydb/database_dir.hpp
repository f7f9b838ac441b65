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

// On-disk database directory and the data-literal file format read by
// `fuzzydb load-data`.
//
//   <root>/MANIFEST        JSON: format, version, catalog file, table files
//   <root>/catalog.fcat    sectioned catalog definition
//   <root>/tables/T.ftab   one serialized relation per table
//   <root>/.lock           advisory lock held by every command

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzydb/catalog.hpp"
#include "fuzzydb/storage.hpp"

namespace fuzzydb {

/// A rejected row or field of a data file. `field` is 1-based, 0 when the
/// problem concerns the whole row.
struct DataViolation {
  std::size_t line = 0;
  std::size_t field = 0;
  std::string kind;
  std::string message;
};

struct DataLoadResult {
  std::optional<Relation> relation;
  std::vector<DataViolation> violations;
  bool ok() const { return violations.empty() && relation.has_value(); }
};

/// Reads a data file:
///
///   #fuzzydb-data v1
///   table Rollos
///   column Codigo_rollo crisp-text key
///   column Estado type3 Rollos.Estado
///   row 'R01', {0.5/Sucio, 1/Humedo}
///
/// Header and literal syntax problems throw SyntaxError; rows that parse
/// but do not fit the schema or catalog are reported as violations.
DataLoadResult load_data_text(std::string_view text, const Catalog& catalog);

class DatabaseDir {
 public:
  static constexpr int kFormatVersion = 1;

  /// Creates the directory (or fills an empty one). IoFailure when the
  /// path is occupied or not writable.
  static void init(const std::filesystem::path& root);

  /// Opens an initialized directory; IoFailure on a missing or
  /// incompatible manifest or a referenced file that does not exist.
  explicit DatabaseDir(std::filesystem::path root);

  const std::filesystem::path& root() const noexcept { return root_; }
  bool has_catalog() const noexcept { return catalog_file_.has_value(); }
  std::vector<std::string> table_names() const;

  /// NoCatalog before the first load-catalog.
  CatalogDocument catalog_document() const;
  /// Catalog plus every stored table.
  Database open() const;

  /// The first catalog is frozen: storing a different one afterwards
  /// throws CatalogFrozen, storing an identical one is a no-op.
  void store_catalog(const CatalogDocument& doc);
  /// DuplicateTable unless `replace`.
  void store_table(const Relation& rel, const Catalog& catalog, bool replace);

 private:
  DatabaseDir() = default;
  void write_manifest() const;

  std::filesystem::path root_;
  std::optional<std::string> catalog_file_;
  std::vector<std::pair<std::string, std::string>> tables_;  // name -> relative file
};

/// Exclusive advisory lock on <root>/.lock for the lifetime of the object.
class DirLock {
 public:
  explicit DirLock(const std::filesystem::path& root);
  ~DirLock();
  DirLock(const DirLock&) = delete;
  DirLock& operator=(const DirLock&) = delete;

 private:
  int fd_ = -1;
};

/// Writes `content` to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
std::string read_file(const std::filesystem::path& path);

}  // namespace fuzzydb
