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

// fuzzydb command-line front end.
//
// Exit status: 0 success, 1 validation or domain failure, 2 I/O or parse
// failure.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fuzzydb/catalog.hpp"
#include "fuzzydb/database_dir.hpp"
#include "fuzzydb/encoding.hpp"
#include "fuzzydb/error.hpp"
#include "fuzzydb/fquery.hpp"

namespace fs = std::filesystem;
using namespace fuzzydb;

namespace {

constexpr int kOk = 0;
constexpr int kDomain = 1;
constexpr int kEnvironment = 2;

void print_violation(const Violation& v) {
  std::cerr << (v.severity == Violation::Severity::Error ? "error" : "warning");
  if (v.line) std::cerr << ": line " << v.line;
  std::cerr << ": " << v.kind;
  if (!v.obj.empty()) std::cerr << " " << v.obj << (v.col.empty() ? "" : "." + v.col);
  std::cerr << ": " << v.message << '\n';
}

void print_violation(const DataViolation& v) {
  std::cerr << "error: line " << v.line;
  if (v.field) std::cerr << " field " << v.field;
  std::cerr << ": " << v.kind << ": " << v.message << '\n';
}

int report(const Error& e) {
  std::cerr << "error: " << error_code_name(e.code()) << ": " << e.what() << '\n';
  return e.code() == ErrorCode::IoFailure ? kEnvironment : kDomain;
}

int report_file_syntax(const SyntaxError& e, const std::string& source, const std::string& file) {
  std::cerr << file << ": " << e.diagnostic(source);
  return kEnvironment;
}

// Catalog text from a file; kOk plus the result, or an exit code.
int read_catalog(const std::string& file, CatalogLoadResult& out) {
  std::string text;
  try {
    text = read_file(file);
  } catch (const Error& e) {
    return report(e);
  }
  try {
    out = load_catalog_text(text);
  } catch (const SyntaxError& e) {
    return report_file_syntax(e, text, file);
  }
  for (const auto& v : out.violations) print_violation(v);
  return out.ok() ? kOk : kDomain;
}

int cmd_init(const std::string& db) {
  try {
    DatabaseDir::init(db);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kEnvironment;
  }
  std::cout << "initialized " << db << '\n';
  return kOk;
}

int cmd_load_catalog(const std::string& db, const std::string& file) {
  try {
    DatabaseDir dir{db};
    DirLock lock{db};
    CatalogLoadResult loaded;
    if (const int rc = read_catalog(file, loaded); rc != kOk) return rc;
    dir.store_catalog(loaded.document);
    const auto fcl = loaded.document.catalog.fcl_rows();
    std::cout << "catalog loaded: " << fcl.size() << " columns, "
              << loaded.document.catalog.fol_rows().size() << " labels\n";
    return kOk;
  } catch (const Error& e) {
    return report(e);
  }
}

int cmd_load_data(const std::string& db, const std::string& file, const std::string& table,
                  bool replace) {
  try {
    DatabaseDir dir{db};
    DirLock lock{db};
    const CatalogDocument doc = dir.catalog_document();
    const std::string text = read_file(file);
    DataLoadResult loaded;
    try {
      loaded = load_data_text(text, doc.catalog);
    } catch (const SyntaxError& e) {
      return report_file_syntax(e, text, file);
    }
    for (const auto& v : loaded.violations) print_violation(v);
    if (!loaded.ok()) return kDomain;
    if (!table.empty() && table != loaded.relation->name()) {
      std::cerr << "error: " << file << " defines table '" << loaded.relation->name()
                << "', not '" << table << "'\n";
      return kDomain;
    }
    dir.store_table(*loaded.relation, doc.catalog, replace);
    std::cout << "table " << loaded.relation->name() << ": " << loaded.relation->size()
              << " rows\n";
    return kOk;
  } catch (const Error& e) {
    return report(e);
  }
}

int cmd_validate(const std::string& db, const std::string& file) {
  if (!file.empty()) {
    CatalogLoadResult loaded;
    const int rc = read_catalog(file, loaded);
    if (rc == kOk) std::cout << "ok\n";
    return rc;
  }
  try {
    DatabaseDir dir{db};
    DirLock lock{db};
    const CatalogDocument doc = dir.catalog_document();
    bool ok = true;
    for (const auto& v : doc.catalog.validate()) {
      print_violation(v);
      ok = ok && v.severity != Violation::Severity::Error;
    }
    const Database all = dir.open();
    std::cout << (ok ? "ok" : "invalid") << ": " << doc.catalog.fcl_rows().size() << " columns, "
              << all.table_names().size() << " tables\n";
    return ok ? kOk : kDomain;
  } catch (const Error& e) {
    return report(e);
  }
}

int cmd_query(const std::string& db, const std::string& text, const std::string& format) {
  QueryAst ast;
  try {
    ast = parse_query(text);
  } catch (const SyntaxError& e) {
    std::cerr << e.diagnostic(text);
    return kDomain;
  }
  try {
    DatabaseDir dir{db};
    DirLock lock{db};
    if (!dir.has_catalog()) {
      throw Error(ErrorCode::NoSuchTable, "no table named '" + ast.table + "'");
    }
    const Database all = dir.open();
    const QueryResult r = run_query(ast, all);
    std::cout << (format == "json" ? format_result_json(r) : format_result_table(r));
    return kOk;
  } catch (const Error& e) {
    return report(e);
  }
}

int cmd_dump_catalog(const std::string& db, const std::string& format) {
  try {
    DatabaseDir dir{db};
    DirLock lock{db};
    const CatalogDocument doc = dir.catalog_document();
    std::cout << (format == "script" ? emit_loader_script(doc) : dump_catalog_tables(doc.catalog));
    return kOk;
  } catch (const Error& e) {
    return report(e);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"fuzzydb: fuzzy attributes over a crisp relational store"};
  app.require_subcommand(1);

  std::string db;
  if (const char* env = std::getenv("FUZZYDB_DIR")) db = env;
  app.add_option("--db", db, "database directory (default: $FUZZYDB_DIR)");

  auto* init = app.add_subcommand("init", "create an empty database directory");
  std::string init_path;
  init->add_option("path", init_path, "directory to create (default: --db)");

  auto* load_catalog = app.add_subcommand("load-catalog", "load and freeze the fuzzy catalog");
  std::string catalog_file;
  load_catalog->add_option("file", catalog_file, "catalog definition or loader script")->required();

  auto* load_data = app.add_subcommand("load-data", "load a table from a data file");
  std::string data_file, table;
  bool replace = false;
  load_data->add_option("file", data_file, "data file")->required();
  load_data->add_option("--table", table, "expected table name");
  load_data->add_flag("--replace", replace, "replace an already loaded table");

  auto* validate = app.add_subcommand("validate", "check the stored catalog and tables");
  std::string validate_file;
  validate->add_option("file", validate_file, "check this catalog file instead");

  auto* query = app.add_subcommand("query", "run a flexible query");
  std::string query_text, query_format = "table";
  query->add_option("query", query_text, "query text")->required();
  query->add_option("--format", query_format)->check(CLI::IsMember({"table", "json"}));

  auto* dump = app.add_subcommand("dump-catalog", "print the catalog tables or loader script");
  std::string dump_format = "table";
  dump->add_option("--format", dump_format)->check(CLI::IsMember({"table", "script"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kEnvironment;
  }

  if (*init) {
    const std::string path = init_path.empty() ? db : init_path;
    if (path.empty()) {
      std::cerr << "error: no directory given (pass a path, --db or FUZZYDB_DIR)\n";
      return kEnvironment;
    }
    return cmd_init(path);
  }
  const bool needs_db = !(*validate && !validate_file.empty());
  if (needs_db && db.empty()) {
    std::cerr << "error: no database directory (pass --db or set FUZZYDB_DIR)\n";
    return kEnvironment;
  }
  if (*load_catalog) return cmd_load_catalog(db, catalog_file);
  if (*load_data) return cmd_load_data(db, data_file, table, replace);
  if (*validate) return cmd_validate(db, validate_file);
  if (*query) return cmd_query(db, query_text, query_format);
  return cmd_dump_catalog(db, dump_format);
}
