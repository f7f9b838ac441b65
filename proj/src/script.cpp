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

#include <cctype>
#include <map>
#include <sstream>
#include <string>

#include "fuzzydb/encoding.hpp"
#include "fuzzydb/error.hpp"
#include "fuzzydb/text.hpp"

namespace fuzzydb {

namespace {

constexpr std::string_view kScriptBanner = "-- fuzzydb loader script";

std::string default_user_path(std::string_view obj, std::string_view col) {
  return "." + std::string(obj) + "." + std::string(col);
}

struct Idents {
  std::string table, column;
};

Idents idents_of(std::string_view obj, std::string_view col) {
  return {table_identifier(obj), column_identifier(obj, col)};
}

}  // namespace

std::string table_identifier(std::string_view obj) { return "t_" + to_upper(obj); }

std::string column_identifier(std::string_view obj, std::string_view col) {
  std::string out = "c_";
  if (!obj.empty()) out += to_upper(obj.substr(0, 1));
  out += to_upper(col);
  return out;
}

std::string emit_loader_script(const Catalog& catalog) {
  return emit_loader_script(CatalogDocument{catalog, {}});
}

std::string emit_loader_script(const CatalogDocument& doc) {
  const auto& cat = doc.catalog;
  if (cat.empty()) return {};

  std::map<std::pair<std::string, std::string>, std::pair<std::string, std::string>> taken;
  for (const auto& row : cat.fcl_rows()) {
    const auto id = idents_of(row.obj, row.col);
    auto [it, inserted] = taken.emplace(std::pair{id.table, id.column}, std::pair{row.obj, row.col});
    if (!inserted) {
      throw Error(ErrorCode::ScriptNameCollision,
                  "columns " + it->second.first + "." + it->second.second + " and " + row.obj +
                      "." + row.col + " both map to " + id.table + "," + id.column);
    }
  }

  std::ostringstream out;
  out << kScriptBanner << '\n';
  for (const auto& row : cat.fcl_rows()) {
    const auto id = idents_of(row.obj, row.col);
    out << "-- @column " << id.table << ' ' << id.column << ' ' << row.obj << ' ' << row.col
        << '\n';
  }
  for (const auto& row : cat.fol_rows()) {
    const auto id = idents_of(row.obj, row.col);
    out << "-- @label " << id.table << ' ' << id.column << ' ' << row.fuzzy_id << ' '
        << row.fuzzy_name << '\n';
  }

  out << '\n';
  for (const auto& row : cat.fcl_rows()) {
    const auto id = idents_of(row.obj, row.col);
    const auto override_it = doc.naming.user_paths.find({row.obj, row.col});
    const std::string path = override_it != doc.naming.user_paths.end()
                                 ? override_it->second
                                 : default_user_path(row.obj, row.col);
    out << "INSERT into FCL values (" << id.table << ',' << id.column << ',' << row.f_type << ','
        << row.len << ",USER||'" << path << "');\n";
  }

  const auto fol = cat.fol_rows();
  if (!fol.empty()) out << '\n';
  for (const auto& row : fol) {
    const auto id = idents_of(row.obj, row.col);
    const auto override_it = doc.naming.label_texts.find({row.obj, row.col, row.fuzzy_id});
    const std::string text = override_it != doc.naming.label_texts.end()
                                 ? override_it->second
                                 : to_upper(row.fuzzy_name);
    out << "INSERT into FOL values(" << id.table << ',' << id.column << ',' << row.fuzzy_id
        << ",'" << text << "'," << row.fuzzy_type << ");\n";
  }

  const auto fld = cat.fld_rows();
  if (!fld.empty()) out << '\n';
  for (const auto& row : fld) {
    const auto id = idents_of(row.obj, row.col);
    out << "INSERT into FLD values(" << id.table << ',' << id.column << ',' << row.fuzzy_id << ','
        << format_script_number(row.alfa) << ',' << format_script_number(row.beta) << ','
        << format_script_number(row.gamma) << ',' << format_script_number(row.delta) << ");\n";
  }

  const auto fnd = cat.fnd_rows();
  if (!fnd.empty()) out << '\n';
  for (const auto& row : fnd) {
    const auto id = idents_of(row.obj, row.col);
    out << "INSERT into FND values(" << id.table << ',' << id.column << ',' << row.id1 << ','
        << row.id2 << ',' << format_script_number(row.degree) << ");\n";
  }
  return out.str();
}

namespace {

struct Statement {
  std::size_t line;
  std::string table;              // FCL / FOL / FLD / FND, upper-cased
  std::vector<std::string> args;  // raw argument text, trimmed
};

[[noreturn]] void fail(const std::string& why, std::size_t line, std::size_t column,
                       std::vector<std::string> expected = {}) {
  throw SyntaxError(why, line, column, std::move(expected));
}

std::vector<std::string> split_args(std::string_view body, std::size_t line, std::size_t column) {
  std::vector<std::string> args;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < body.size(); ++i) {
    const char c = body[i];
    if (c == '\'') {
      // '' inside a quoted string is an escaped quote
      if (quoted && i + 1 < body.size() && body[i + 1] == '\'') {
        current += "''";
        ++i;
        continue;
      }
      quoted = !quoted;
      current += c;
    } else if (c == ',' && !quoted) {
      args.emplace_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  if (quoted) fail("unterminated string literal", line, column);
  args.emplace_back(trim(current));
  return args;
}

std::optional<std::string> unquote(std::string_view arg) {
  if (arg.size() < 2 || arg.front() != '\'' || arg.back() != '\'') return std::nullopt;
  std::string out;
  for (std::size_t i = 1; i + 1 < arg.size(); ++i) {
    out += arg[i];
    if (arg[i] == '\'') ++i;
  }
  return out;
}

Statement parse_statement(std::string_view text, std::size_t line) {
  // INSERT into <T> values ( ... );
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r')) ++pos;
  };
  auto word = [&]() -> std::string_view {
    skip_ws();
    const std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_')) ++pos;
    return text.substr(start, pos - start);
  };
  auto expect_word = [&](std::string_view want) {
    const std::size_t col = pos + 1;
    if (!iequals(word(), want)) fail("expected " + std::string(want), line, col, {std::string(want)});
  };
  expect_word("INSERT");
  expect_word("into");
  const std::size_t table_col = pos + 1;
  std::string table = to_upper(word());
  if (table != "FCL" && table != "FOL" && table != "FLD" && table != "FND") {
    fail("unknown catalog table '" + table + "'", line, table_col, {"FCL", "FOL", "FLD", "FND"});
  }
  expect_word("values");
  skip_ws();
  if (pos >= text.size() || text[pos] != '(') fail("expected '('", line, pos + 1, {"("});
  const std::size_t open = pos;
  const auto close = text.rfind(')');
  if (close == std::string_view::npos || close < open) fail("expected ')'", line, text.size() + 1, {")"});
  std::size_t tail = close + 1;
  while (tail < text.size() && (text[tail] == ' ' || text[tail] == '\t' || text[tail] == '\r')) ++tail;
  if (tail >= text.size() || text[tail] != ';') fail("expected ';'", line, tail + 1, {";"});
  ++tail;
  while (tail < text.size() && (text[tail] == ' ' || text[tail] == '\t' || text[tail] == '\r')) ++tail;
  if (tail != text.size()) fail("unexpected text after ';'", line, tail + 1);
  return {line, table, split_args(text.substr(open + 1, close - open - 1), line, open + 2)};
}

int int_arg(const Statement& s, std::size_t i) {
  if (auto v = parse_int(s.args[i])) return *v;
  fail("expected an integer, got '" + s.args[i] + "'", s.line, 1, {"integer"});
}

double num_arg(const Statement& s, std::size_t i) {
  if (auto v = parse_number(s.args[i])) return *v;
  fail("expected a number, got '" + s.args[i] + "'", s.line, 1, {"number"});
}

}  // namespace

std::vector<CatalogRecord> parse_loader_script(std::string_view text) {
  std::map<std::pair<std::string, std::string>, std::pair<std::string, std::string>> column_names;
  std::map<std::tuple<std::string, std::string, int>, std::string> label_names;
  std::vector<Statement> statements;

  std::size_t line_no = 0;
  std::size_t begin = 0;
  while (begin <= text.size()) {
    auto end = text.find('\n', begin);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view raw = text.substr(begin, end - begin);
    ++line_no;
    begin = end + 1;

    const std::string_view line = trim(raw);
    if (line.empty()) continue;
    if (line.starts_with("--")) {
      std::istringstream in{std::string(line.substr(2))};
      std::string tag;
      in >> tag;
      if (tag == "@column") {
        std::string t, c, obj, col;
        if (!(in >> t >> c >> obj >> col)) fail("malformed @column header", line_no, 1);
        column_names[{t, c}] = {obj, col};
      } else if (tag == "@label") {
        std::string t, c, name;
        int id = 0;
        if (!(in >> t >> c >> id >> name)) fail("malformed @label header", line_no, 1);
        label_names[{t, c, id}] = name;
      }
      continue;
    }
    const std::size_t indent = static_cast<std::size_t>(line.data() - raw.data());
    try {
      statements.push_back(parse_statement(line, line_no));
    } catch (const SyntaxError& e) {
      throw SyntaxError(e.what(), e.line(), e.column() + indent, e.expected());
    }
    if (begin > text.size()) break;
  }

  // Columns named only through the USER path of their FCL row.
  for (const auto& s : statements) {
    if (s.table != "FCL" || s.args.size() != 5) continue;
    const std::string& user = s.args[4];
    if (!user.starts_with("USER||")) continue;
    if (auto path = unquote(trim(std::string_view(user).substr(6)))) {
      const auto dot = path->find('.', 1);
      if (path->starts_with(".") && dot != std::string::npos) {
        column_names.try_emplace({s.args[0], s.args[1]}, path->substr(1, dot - 1),
                                 path->substr(dot + 1));
      }
    }
  }

  auto resolve = [&](const Statement& s) -> std::pair<std::string, std::string> {
    const auto it = column_names.find({s.args[0], s.args[1]});
    if (it == column_names.end()) {
      fail("cannot resolve column identifiers " + s.args[0] + "," + s.args[1], s.line, 1);
    }
    return it->second;
  };

  std::vector<CatalogRecord> records;
  for (const auto& s : statements) {
    const std::size_t want = s.table == "FCL" ? 5 : s.table == "FOL" ? 5 : s.table == "FLD" ? 7 : 5;
    if (s.args.size() != want && !(s.table == "FCL" && s.args.size() == 4)) {
      fail(s.table + " expects " + std::to_string(want) + " values, got " +
               std::to_string(s.args.size()),
           s.line, 1);
    }
    const auto [obj, col] = resolve(s);
    if (s.table == "FCL") {
      records.push_back({s.line, FclRow{obj, col, int_arg(s, 2), int_arg(s, 3)}});
      if (s.args.size() == 5) {
        std::string_view user = s.args[4];
        if (!user.starts_with("USER||")) fail("expected USER||'<path>'", s.line, 1, {"USER||"});
        const auto path = unquote(trim(user.substr(6)));
        if (!path) fail("expected a quoted USER path", s.line, 1);
        if (*path != default_user_path(obj, col)) {
          records.push_back({s.line, UserPathOverride{obj, col, *path}});
        }
      }
    } else if (s.table == "FOL") {
      const int id = int_arg(s, 2);
      const auto text_arg = unquote(s.args[3]);
      if (!text_arg) fail("expected a quoted label name", s.line, 1, {"'name'"});
      const auto named = label_names.find({s.args[0], s.args[1], id});
      const std::string name = named != label_names.end() ? named->second : *text_arg;
      records.push_back({s.line, FolRow{obj, col, id, name, int_arg(s, 4)}});
      if (*text_arg != to_upper(name)) {
        records.push_back({s.line, LabelTextOverride{obj, col, id, *text_arg}});
      }
    } else if (s.table == "FLD") {
      records.push_back({s.line, FldRow{obj, col, int_arg(s, 2), num_arg(s, 3), num_arg(s, 4),
                                        num_arg(s, 5), num_arg(s, 6)}});
    } else {
      records.push_back({s.line, FndRow{obj, col, int_arg(s, 2), int_arg(s, 3), num_arg(s, 4)}});
    }
  }
  return records;
}

}  // namespace fuzzydb
