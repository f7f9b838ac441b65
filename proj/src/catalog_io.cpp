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

// Catalog definition files.
//
//   # comment
//   [FCL]
//   Pilas Estado 3 9
//   [FOL]
//   Rollos Diametro 0 'Rango_min' 0
//   [FLD]
//   Rollos Diametro 0 50 70 100 130
//   [FND]
//   Rollos Estado 0 5 0.3
//   [SCRIPT]
//   user Pilas Largo '.Pilas.largo'
//   label Rollos Diametro 1 'NORMA'
//
// Files starting with an INSERT statement (or the loader-script banner) are
// read with parse_loader_script instead.

#include <algorithm>
#include <cctype>
#include <type_traits>
#include <sstream>
#include <string>

#include "fuzzydb/catalog.hpp"
#include "fuzzydb/encoding.hpp"
#include "fuzzydb/error.hpp"
#include "fuzzydb/text.hpp"

namespace fuzzydb {

namespace {

struct Token {
  std::string text;
  bool quoted = false;
  std::size_t column = 0;
};

std::vector<Token> tokenize(std::string_view line, std::size_t line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    Token tok;
    tok.column = i + 1;
    if (line[i] == '\'') {
      tok.quoted = true;
      ++i;
      bool closed = false;
      while (i < line.size()) {
        if (line[i] == '\'') {
          if (i + 1 < line.size() && line[i + 1] == '\'') {
            tok.text += '\'';
            i += 2;
            continue;
          }
          ++i;
          closed = true;
          break;
        }
        tok.text += line[i++];
      }
      if (!closed) throw SyntaxError("unterminated quoted name", line_no, tok.column, {"'"});
    } else {
      while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) {
        tok.text += line[i++];
      }
    }
    out.push_back(std::move(tok));
  }
  return out;
}

enum class Section { None, Fcl, Fol, Fld, Fnd, Script };

int int_field(const Token& t, std::size_t line) {
  if (auto v = parse_int(t.text)) return *v;
  throw SyntaxError("expected an integer, got '" + t.text + "'", line, t.column, {"integer"});
}

double num_field(const Token& t, std::size_t line) {
  if (auto v = parse_number(t.text)) return *v;
  throw SyntaxError("expected a number, got '" + t.text + "'", line, t.column, {"number"});
}

bool is_script_dialect(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    const auto t = trim(line);
    if (t.starts_with("-- fuzzydb loader script")) return true;
    if (t.empty() || t.starts_with("#") || t.starts_with("--")) continue;
    return t.size() >= 6 && iequals(t.substr(0, 6), "INSERT");
  }
  return false;
}

std::vector<CatalogRecord> parse_definition(std::string_view text) {
  std::vector<CatalogRecord> records;
  Section section = Section::None;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty() || line.starts_with("#")) continue;
    if (line.starts_with("[")) {
      const std::string name = to_upper(line);
      if (name == "[FCL]") section = Section::Fcl;
      else if (name == "[FOL]") section = Section::Fol;
      else if (name == "[FLD]") section = Section::Fld;
      else if (name == "[FND]") section = Section::Fnd;
      else if (name == "[SCRIPT]") section = Section::Script;
      else {
        throw SyntaxError("unknown section " + std::string(line), line_no, 1,
                          {"[FCL]", "[FOL]", "[FLD]", "[FND]", "[SCRIPT]"});
      }
      continue;
    }
    const auto toks = tokenize(raw, line_no);
    auto need = [&](std::size_t n, const char* shape) {
      if (toks.size() != n) {
        const std::size_t col = toks.size() > n ? toks[n].column : raw.size() + 1;
        throw SyntaxError(std::string("expected ") + shape, line_no, col);
      }
    };
    switch (section) {
      case Section::None:
        throw SyntaxError("record outside of a section", line_no, 1,
                          {"[FCL]", "[FOL]", "[FLD]", "[FND]", "[SCRIPT]"});
      case Section::Fcl:
        need(4, "OBJ COL F_TYPE LEN");
        records.push_back({line_no, FclRow{toks[0].text, toks[1].text, int_field(toks[2], line_no),
                                           int_field(toks[3], line_no)}});
        break;
      case Section::Fol:
        need(5, "OBJ COL FUZZY_ID 'NAME' FUZZY_TYPE");
        records.push_back({line_no, FolRow{toks[0].text, toks[1].text, int_field(toks[2], line_no),
                                           toks[3].text, int_field(toks[4], line_no)}});
        break;
      case Section::Fld:
        need(7, "OBJ COL FUZZY_ID ALFA BETA GAMMA DELTA");
        records.push_back({line_no, FldRow{toks[0].text, toks[1].text, int_field(toks[2], line_no),
                                           num_field(toks[3], line_no), num_field(toks[4], line_no),
                                           num_field(toks[5], line_no), num_field(toks[6], line_no)}});
        break;
      case Section::Fnd:
        need(5, "OBJ COL FUZZY_ID1 FUZZY_ID2 DEGREE");
        records.push_back({line_no, FndRow{toks[0].text, toks[1].text, int_field(toks[2], line_no),
                                           int_field(toks[3], line_no), num_field(toks[4], line_no)}});
        break;
      case Section::Script:
        if (!toks.empty() && toks[0].text == "user") {
          need(4, "user OBJ COL 'PATH'");
          records.push_back({line_no, UserPathOverride{toks[1].text, toks[2].text, toks[3].text}});
        } else if (!toks.empty() && toks[0].text == "label") {
          need(5, "label OBJ COL FUZZY_ID 'TEXT'");
          records.push_back({line_no, LabelTextOverride{toks[1].text, toks[2].text,
                                                        int_field(toks[3], line_no), toks[4].text}});
        } else {
          throw SyntaxError("expected 'user' or 'label'", line_no, toks.empty() ? 1 : toks[0].column,
                            {"user", "label"});
        }
        break;
    }
  }
  return records;
}

std::string quote(std::string_view s) {
  std::string out = "'";
  for (char c : s) {
    out += c;
    if (c == '\'') out += '\'';
  }
  return out + "'";
}

}  // namespace

std::vector<CatalogRecord> parse_catalog_text(std::string_view text) {
  return is_script_dialect(text) ? parse_loader_script(text) : parse_definition(text);
}

CatalogLoadResult build_catalog(const std::vector<CatalogRecord>& records) {
  std::vector<const CatalogRecord*> ordered;
  for (const auto& r : records) ordered.push_back(&r);
  // Dependency order is the variant order: FCL, FOL, FLD, FND, overrides.
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto* a, const auto* b) {
    return a->row.index() < b->row.index();
  });

  CatalogLoadResult result;
  auto& cat = result.document.catalog;
  auto& naming = result.document.naming;
  for (const auto* rec : ordered) {
    std::string obj, col;
    try {
      std::visit(
          [&](const auto& row) {
            using T = std::decay_t<decltype(row)>;
            obj = row.obj;
            col = row.col;
            if constexpr (std::is_same_v<T, FclRow>) cat.register_column(row);
            else if constexpr (std::is_same_v<T, FolRow>) cat.define_label(row);
            else if constexpr (std::is_same_v<T, FldRow>) cat.define_trapezoid(row);
            else if constexpr (std::is_same_v<T, FndRow>) cat.define_similarity(row);
            else if constexpr (std::is_same_v<T, UserPathOverride>) {
              cat.column_meta(row.obj, row.col);
              naming.user_paths[{row.obj, row.col}] = row.path;
            } else {
              if (!cat.has_label_id(row.obj, row.col, row.fuzzy_id)) {
                throw Error(ErrorCode::NoSuchLabel, "no label id " + std::to_string(row.fuzzy_id) +
                                                        " on " + row.obj + "." + row.col);
              }
              naming.label_texts[{row.obj, row.col, row.fuzzy_id}] = row.text;
            }
          },
          rec->row);
    } catch (const Error& e) {
      result.violations.push_back({Violation::Severity::Error, std::string(error_code_name(e.code())),
                                   obj, col, e.what(), rec->line});
    }
  }
  for (auto& v : cat.validate()) result.violations.push_back(std::move(v));
  std::stable_sort(result.violations.begin(), result.violations.end(),
                   [](const Violation& a, const Violation& b) {
                     // file-located violations first, in line order
                     if ((a.line == 0) != (b.line == 0)) return a.line != 0;
                     return a.line < b.line;
                   });
  return result;
}

CatalogLoadResult load_catalog_text(std::string_view text) {
  return build_catalog(parse_catalog_text(text));
}

std::string write_catalog_definition(const CatalogDocument& doc) {
  const auto& cat = doc.catalog;
  std::ostringstream out;
  out << "[FCL]\n";
  for (const auto& r : cat.fcl_rows()) {
    out << r.obj << ' ' << r.col << ' ' << r.f_type << ' ' << r.len << '\n';
  }
  out << "\n[FOL]\n";
  for (const auto& r : cat.fol_rows()) {
    out << r.obj << ' ' << r.col << ' ' << r.fuzzy_id << ' ' << quote(r.fuzzy_name) << ' '
        << r.fuzzy_type << '\n';
  }
  out << "\n[FLD]\n";
  for (const auto& r : cat.fld_rows()) {
    out << r.obj << ' ' << r.col << ' ' << r.fuzzy_id << ' ' << format_number(r.alfa) << ' '
        << format_number(r.beta) << ' ' << format_number(r.gamma) << ' ' << format_number(r.delta)
        << '\n';
  }
  out << "\n[FND]\n";
  for (const auto& r : cat.fnd_rows()) {
    out << r.obj << ' ' << r.col << ' ' << r.id1 << ' ' << r.id2 << ' ' << format_number(r.degree)
        << '\n';
  }
  if (!doc.naming.user_paths.empty() || !doc.naming.label_texts.empty()) {
    out << "\n[SCRIPT]\n";
    for (const auto& [key, path] : doc.naming.user_paths) {
      out << "user " << key.first << ' ' << key.second << ' ' << quote(path) << '\n';
    }
    for (const auto& [key, text] : doc.naming.label_texts) {
      out << "label " << std::get<0>(key) << ' ' << std::get<1>(key) << ' ' << std::get<2>(key)
          << ' ' << quote(text) << '\n';
    }
  }
  return out.str();
}

std::string dump_catalog_tables(const Catalog& cat) {
  std::ostringstream out;
  out << "FUZZY_COL_LIST (FCL)\n";
  out << "OBJ# | COL# | F_TYPE | LEN\n";
  for (const auto& r : cat.fcl_rows()) {
    out << r.obj << " | " << r.col << " | " << r.f_type << " | " << r.len << '\n';
  }
  out << "\nFUZZY_OBJECT_LIST (FOL)\n";
  out << "OBJ# | COL# | FUZZY_ID | FUZZY_NAME | FUZZY_TYPE\n";
  for (const auto& r : cat.fol_rows()) {
    out << r.obj << " | " << r.col << " | " << r.fuzzy_id << " | " << quote(r.fuzzy_name) << " | "
        << r.fuzzy_type << '\n';
  }
  out << "\nFUZZY_LABEL_DEF (FLD)\n";
  out << "OBJ# | COL# | FUZZY_ID | ALFA | BETA | GAMMA | DELTA\n";
  for (const auto& r : cat.fld_rows()) {
    out << r.obj << " | " << r.col << " | " << r.fuzzy_id << " | " << format_number(r.alfa)
        << " | " << format_number(r.beta) << " | " << format_number(r.gamma) << " | "
        << format_number(r.delta) << '\n';
  }
  out << "\nFUZZY_NEARNESS_DEF (FND)\n";
  out << "OBJ# | COL# | FUZZY_ID1 | FUZZY_ID2 | DEGREE\n";
  for (const auto& r : cat.fnd_rows()) {
    out << r.obj << " | " << r.col << " | " << r.id1 << " | " << r.id2 << " | "
        << format_number(r.degree) << '\n';
  }
  return out.str();
}

}  // namespace fuzzydb
