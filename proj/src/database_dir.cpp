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

#include "fuzzydb/database_dir.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fuzzydb/error.hpp"
#include "fuzzydb/fquery.hpp"
#include "fuzzydb/text.hpp"

namespace fuzzydb {

namespace fs = std::filesystem;

namespace {

constexpr std::string_view kManifest = "MANIFEST";
constexpr std::string_view kCatalogFile = "catalog.fcat";

std::vector<std::string> words(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::optional<CatalogBinding> parse_binding(std::string_view text) {
  const auto dot = text.find('.');
  if (dot == std::string_view::npos || dot == 0 || dot + 1 == text.size()) return std::nullopt;
  return CatalogBinding{std::string(text.substr(0, dot)), std::string(text.substr(dot + 1))};
}

std::string errno_text() { return std::strerror(errno); }

}  // namespace

DataLoadResult load_data_text(std::string_view text, const Catalog& catalog) {
  DataLoadResult result;
  std::optional<std::string> table;
  std::vector<ColumnSpec> schema;
  std::vector<std::string> key;
  bool header_seen = false;
  std::size_t line_no = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    const std::string_view raw =
        text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::string_view line = trim(raw);
    if (!header_seen) {
      if (line != "#fuzzydb-data v1") {
        throw SyntaxError("expected '#fuzzydb-data v1' header", line_no, 1, {"#fuzzydb-data v1"});
      }
      header_seen = true;
      continue;
    }
    if (line.empty() || line.front() == '#') continue;

    const auto w = words(line);
    if (w[0] == "table") {
      if (w.size() != 2 || table) throw SyntaxError("expected one 'table NAME' line", line_no, 1);
      table = w[1];
    } else if (w[0] == "column") {
      if (result.relation) throw SyntaxError("column declared after the first row", line_no, 1);
      if (w.size() < 3 || w.size() > 5) {
        throw SyntaxError("expected 'column NAME KIND [OBJ.COL] [key]'", line_no, 1);
      }
      ColumnSpec spec;
      spec.name = w[1];
      const auto kind = parse_column_kind(w[2]);
      if (!kind) {
        throw SyntaxError("unknown column kind '" + w[2] + "'", line_no, 1,
                          {"crisp-numeric", "crisp-text", "type1", "type2", "type3"});
      }
      spec.kind = *kind;
      for (std::size_t i = 3; i < w.size(); ++i) {
        if (w[i] == "key") {
          key.push_back(spec.name);
        } else if (auto b = parse_binding(w[i]); b && !spec.binding) {
          spec.binding = std::move(b);
        } else {
          throw SyntaxError("unexpected '" + w[i] + "' in column declaration", line_no, 1,
                            {"OBJ.COL", "key"});
        }
      }
      schema.push_back(std::move(spec));
    } else if (w[0] == "row") {
      if (!result.relation) {
        if (!table) throw SyntaxError("row before 'table' line", line_no, 1);
        try {
          result.relation.emplace(*table, schema, key, catalog);
        } catch (const SyntaxError&) {
          throw;
        } catch (const Error& e) {
          result.violations.push_back({line_no, 0, std::string(error_code_name(e.code())), e.what()});
          return result;
        }
      }
      // Keep columns aligned with the file for diagnostics.
      const std::size_t offset = static_cast<std::size_t>(line.data() - raw.data()) + 3;
      const std::string padded = std::string(offset, ' ') + std::string(line.substr(3));
      const auto constants = parse_constant_list(padded, true, line_no);
      Relation& rel = *result.relation;
      if (constants.size() != rel.schema().size()) {
        result.violations.push_back({line_no, 0, "ArityMismatch",
                                     "row has " + std::to_string(constants.size()) +
                                         " values, table has " +
                                         std::to_string(rel.schema().size()) + " columns"});
        continue;
      }
      Tuple tuple;
      bool row_ok = true;
      for (std::size_t i = 0; i < constants.size(); ++i) {
        const auto& spec = rel.schema()[i];
        try {
          CellValue cell = constant_to_cell(constants[i], spec);
          check_cell(spec, cell, catalog);
          tuple.values.push_back(std::move(cell));
        } catch (const SyntaxError&) {
          throw;
        } catch (const Error& e) {
          result.violations.push_back({line_no, i + 1, std::string(error_code_name(e.code())),
                                       e.what()});
          row_ok = false;
        }
      }
      if (!row_ok) continue;
      try {
        rel.insert(std::move(tuple), catalog);
      } catch (const Error& e) {
        result.violations.push_back({line_no, 0, std::string(error_code_name(e.code())), e.what()});
      }
    } else {
      throw SyntaxError("unexpected '" + w[0] + "'", line_no, 1, {"table", "column", "row"});
    }
  }
  if (!header_seen) throw SyntaxError("expected '#fuzzydb-data v1' header", 1, 1);
  if (!table) throw SyntaxError("missing 'table NAME' line", line_no, 1, {"table"});
  if (!result.relation) {
    try {
      result.relation.emplace(*table, schema, key, catalog);
    } catch (const Error& e) {
      result.violations.push_back({0, 0, std::string(error_code_name(e.code())), e.what()});
    }
  }
  return result;
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoFailure, "read failed for " + path.string());
  return buf.str();
}

void write_file_atomic(const fs::path& path, std::string_view content) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + tmp.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    out.close();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw Error(ErrorCode::IoFailure, "write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw Error(ErrorCode::IoFailure, "cannot replace " + path.string() + ": " + ec.message());
  }
}

void DatabaseDir::init(const fs::path& root) {
  std::error_code ec;
  if (fs::exists(root, ec)) {
    if (!fs::is_directory(root, ec) || !fs::is_empty(root, ec)) {
      throw Error(ErrorCode::IoFailure, root.string() + " is occupied");
    }
  } else if (!fs::create_directories(root, ec) || ec) {
    throw Error(ErrorCode::IoFailure,
                "cannot create " + root.string() + (ec ? ": " + ec.message() : ""));
  }
  fs::create_directory(root / "tables", ec);
  if (ec) throw Error(ErrorCode::IoFailure, "cannot create " + (root / "tables").string() + ": " + ec.message());
  std::ofstream(root / ".lock").close();
  DatabaseDir fresh;
  fresh.root_ = root;
  fresh.write_manifest();
}

DatabaseDir::DatabaseDir(fs::path root) : root_(std::move(root)) {
  const fs::path manifest = root_ / kManifest;
  if (!fs::exists(manifest)) {
    throw Error(ErrorCode::IoFailure, root_.string() + " is not a fuzzydb directory (run init)");
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(read_file(manifest));
    if (doc.at("format") != "fuzzydb") throw Error(ErrorCode::IoFailure, "bad format tag");
    const int version = doc.at("version").get<int>();
    if (version != kFormatVersion) {
      throw Error(ErrorCode::IoFailure, "manifest version " + std::to_string(version) +
                                            " is not supported (expected " +
                                            std::to_string(kFormatVersion) + ")");
    }
    if (!doc.at("catalog").is_null()) catalog_file_ = doc["catalog"].get<std::string>();
    for (const auto& [name, file] : doc.at("tables").items()) {
      tables_.emplace_back(name, file.get<std::string>());
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::IoFailure, "malformed manifest in " + root_.string() + ": " + e.what());
  }
  if (catalog_file_ && !fs::exists(root_ / *catalog_file_)) {
    throw Error(ErrorCode::IoFailure, "manifest names missing file " + *catalog_file_);
  }
  for (const auto& [name, file] : tables_) {
    if (!fs::exists(root_ / file)) {
      throw Error(ErrorCode::IoFailure, "manifest names missing file " + file);
    }
  }
}

std::vector<std::string> DatabaseDir::table_names() const {
  std::vector<std::string> out;
  for (const auto& t : tables_) out.push_back(t.first);
  return out;
}

CatalogDocument DatabaseDir::catalog_document() const {
  if (!catalog_file_) throw Error(ErrorCode::NoCatalog, "no catalog loaded in " + root_.string());
  auto loaded = load_catalog_text(read_file(root_ / *catalog_file_));
  if (!loaded.ok()) {
    throw Error(ErrorCode::IoFailure, "stored catalog in " + root_.string() + " does not validate");
  }
  return std::move(loaded.document);
}

Database DatabaseDir::open() const {
  Database db{catalog_document()};
  for (const auto& [name, file] : tables_) db.add_table(load_relation(root_ / file, db.catalog()));
  return db;
}

void DatabaseDir::store_catalog(const CatalogDocument& doc) {
  if (catalog_file_) {
    if (catalog_document() == doc) return;
    throw Error(ErrorCode::CatalogFrozen,
                "a different catalog is already loaded; start from a fresh directory");
  }
  write_file_atomic(root_ / kCatalogFile, write_catalog_definition(doc));
  catalog_file_ = std::string(kCatalogFile);
  try {
    write_manifest();
  } catch (...) {
    std::error_code ec;
    fs::remove(root_ / kCatalogFile, ec);
    catalog_file_.reset();
    throw;
  }
}

void DatabaseDir::store_table(const Relation& rel, const Catalog& catalog, bool replace) {
  const auto existing = std::find_if(tables_.begin(), tables_.end(),
                                     [&](const auto& t) { return t.first == rel.name(); });
  if (existing != tables_.end() && !replace) {
    throw Error(ErrorCode::DuplicateTable,
                "table '" + rel.name() + "' is already loaded (use --replace)");
  }
  const std::string file = "tables/" + rel.name() + ".ftab";
  fs::create_directories(root_ / "tables");
  const bool fresh = existing == tables_.end();
  write_file_atomic(root_ / file, serialize_relation(rel, catalog));
  if (fresh) {
    tables_.emplace_back(rel.name(), file);
    try {
      write_manifest();
    } catch (...) {
      std::error_code ec;
      fs::remove(root_ / file, ec);
      tables_.pop_back();
      throw;
    }
  }
}

void DatabaseDir::write_manifest() const {
  nlohmann::ordered_json doc;
  doc["format"] = "fuzzydb";
  doc["version"] = kFormatVersion;
  doc["catalog"] = catalog_file_ ? nlohmann::ordered_json(*catalog_file_) : nlohmann::ordered_json();
  doc["tables"] = nlohmann::ordered_json::object();
  for (const auto& [name, file] : tables_) doc["tables"][name] = file;
  write_file_atomic(root_ / kManifest, doc.dump(2) + "\n");
}

DirLock::DirLock(const fs::path& root) {
  const fs::path path = root / ".lock";
  fd_ = ::open(path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd_ < 0) throw Error(ErrorCode::IoFailure, "cannot open " + path.string() + ": " + errno_text());
  if (::flock(fd_, LOCK_EX | LOCK_NB) != 0) {
    ::close(fd_);
    fd_ = -1;
    throw Error(ErrorCode::IoFailure, root.string() + " is locked by another fuzzydb process");
  }
}

DirLock::~DirLock() {
  if (fd_ >= 0) {
    ::flock(fd_, LOCK_UN);
    ::close(fd_);
  }
}

}  // namespace fuzzydb
