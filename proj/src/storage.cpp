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

#include "fuzzydb/storage.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <json.hpp>

#include "fuzzydb/encoding.hpp"
#include "fuzzydb/error.hpp"
#include "fuzzydb/text.hpp"

namespace fuzzydb {

namespace {

constexpr std::string_view kMagic = "#fuzzydb-table v1";

int expected_f_type(ColumnKind k) {
  switch (k) {
    case ColumnKind::Type1: return 1;
    case ColumnKind::Type2: return 2;
    case ColumnKind::Type3: return 3;
    default: return 0;
  }
}

std::string cell_kind(const CellValue& v) {
  switch (v.index()) {
    case 0: return "number";
    case 1: return "text";
    case 2: return "Type-2 value";
    default: return "Type-3 value";
  }
}

[[noreturn]] void incompatible(const ColumnSpec& spec, const CellValue& value) {
  throw Error(ErrorCode::TypeIncompatible, "column " + spec.name + " (" +
                                               std::string(column_kind_name(spec.kind)) +
                                               ") cannot hold a " + cell_kind(value));
}

}  // namespace

std::string_view column_kind_name(ColumnKind kind) {
  switch (kind) {
    case ColumnKind::CrispNumeric: return "crisp-numeric";
    case ColumnKind::CrispText: return "crisp-text";
    case ColumnKind::Type1: return "type1";
    case ColumnKind::Type2: return "type2";
    case ColumnKind::Type3: return "type3";
  }
  return "?";
}

std::optional<ColumnKind> parse_column_kind(std::string_view name) {
  for (auto k : {ColumnKind::CrispNumeric, ColumnKind::CrispText, ColumnKind::Type1,
                 ColumnKind::Type2, ColumnKind::Type3}) {
    if (iequals(name, column_kind_name(k))) return k;
  }
  return std::nullopt;
}

Relation::Relation(std::string name, std::vector<ColumnSpec> schema,
                   const std::vector<std::string>& primary_key, const Catalog& catalog)
    : name_(std::move(name)), schema_(std::move(schema)) {
  if (name_.empty()) throw Error(ErrorCode::InvalidValue, "empty table name");
  if (schema_.empty()) throw Error(ErrorCode::InvalidValue, "table " + name_ + " has no columns");
  std::set<std::string> names;
  for (const auto& c : schema_) {
    if (c.name.empty() || !names.insert(c.name).second) {
      throw Error(ErrorCode::InvalidValue, "duplicate or empty column name '" + c.name + "'");
    }
    if (is_crisp(c.kind)) {
      if (c.binding) {
        throw Error(ErrorCode::InvalidValue, "crisp column " + c.name + " cannot be bound to the catalog");
      }
      continue;
    }
    if (!c.binding || !catalog.has_column(c.binding->obj, c.binding->col)) {
      throw Error(ErrorCode::UnboundFuzzyColumn,
                  "column " + c.name + " is not bound to a catalog entry");
    }
    const auto& meta = catalog.column_meta(c.binding->obj, c.binding->col);
    if (meta.f_type != expected_f_type(c.kind)) {
      throw Error(ErrorCode::UnboundFuzzyColumn,
                  "column " + c.name + " is " + std::string(column_kind_name(c.kind)) + " but " +
                      meta.obj + "." + meta.col + " has F_TYPE " + std::to_string(meta.f_type));
    }
  }
  for (const auto& k : primary_key) {
    const auto idx = column_index(k);
    if (!idx) throw Error(ErrorCode::NoSuchColumn, "key column " + k + " not in schema");
    if (!is_crisp(schema_[*idx].kind)) {
      throw Error(ErrorCode::KeyNotCrisp, "key column " + k + " is not crisp");
    }
    key_.push_back(*idx);
  }
}

std::optional<std::size_t> Relation::column_index(std::string_view name) const {
  for (std::size_t i = 0; i < schema_.size(); ++i) {
    if (schema_[i].name == name) return i;
  }
  return std::nullopt;
}

std::string Relation::key_of(const Tuple& t) const {
  nlohmann::json key = nlohmann::json::array();
  for (auto i : key_) {
    if (const auto* d = std::get_if<double>(&t.values[i])) key.push_back(*d);
    else key.push_back(std::get<std::string>(t.values[i]));
  }
  return key.dump();
}

void check_cell(const ColumnSpec& spec, const CellValue& value, const Catalog& catalog) {
  switch (spec.kind) {
    case ColumnKind::CrispNumeric:
    case ColumnKind::Type1: {
      const auto* d = std::get_if<double>(&value);
      if (!d) incompatible(spec, value);
      if (!std::isfinite(*d)) throw Error(ErrorCode::InvalidValue, "non-finite number in " + spec.name);
      return;
    }
    case ColumnKind::CrispText:
      if (!std::holds_alternative<std::string>(value)) incompatible(spec, value);
      return;
    case ColumnKind::Type2: {
      const auto* v = std::get_if<FuzzyValue2>(&value);
      if (!v) incompatible(spec, value);
      if (const auto* l = std::get_if<LabelRef>(&v->get())) {
        catalog.trapezoid_of_label(spec.binding->obj, spec.binding->col,
                                   catalog.label_id_by_name(spec.binding->obj, spec.binding->col, l->name));
      }
      return;
    }
    case ColumnKind::Type3: {
      const auto* v = std::get_if<FuzzyValue3>(&value);
      if (!v) incompatible(spec, value);
      const auto& meta = catalog.column_meta(spec.binding->obj, spec.binding->col);
      if (v->pairs().size() > static_cast<std::size_t>(meta.len)) {
        throw Error(ErrorCode::TooManyPairs,
                    "column " + spec.name + ": distribution has " +
                        std::to_string(v->pairs().size()) + " pairs but LEN is " +
                        std::to_string(meta.len));
      }
      for (const auto& p : v->pairs()) {
        catalog.label_id_by_name(meta.obj, meta.col, p.label());
      }
      return;
    }
  }
}

void Relation::insert(Tuple tuple, const Catalog& catalog) {
  if (tuple.values.size() != schema_.size()) {
    throw Error(ErrorCode::ArityMismatch, "table " + name_ + " has " +
                                              std::to_string(schema_.size()) + " columns, tuple has " +
                                              std::to_string(tuple.values.size()));
  }
  for (std::size_t i = 0; i < schema_.size(); ++i) check_cell(schema_[i], tuple.values[i], catalog);
  std::string key;
  if (!key_.empty()) {
    key = key_of(tuple);
    if (keys_.contains(key)) throw Error(ErrorCode::DuplicateKey, "duplicate key " + key + " in " + name_);
  }
  tuples_.push_back(std::move(tuple));
  if (!key_.empty()) keys_.insert(std::move(key));
}

std::uint64_t catalog_fingerprint(const Catalog& catalog) {
  const std::string text = write_catalog_definition(CatalogDocument{catalog, {}});
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

namespace {

std::string field(const std::optional<double>& v) { return v ? format_number(*v) : "NULL"; }

std::vector<std::string_view> split_tabs(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t begin = 0;
  while (true) {
    const auto tab = line.find('\t', begin);
    out.push_back(line.substr(begin, tab == std::string_view::npos ? std::string_view::npos : tab - begin));
    if (tab == std::string_view::npos) break;
    begin = tab + 1;
  }
  return out;
}

[[noreturn]] void malformed_at(std::size_t line, const std::string& why) {
  throw Error(ErrorCode::MalformedRow, "line " + std::to_string(line) + ": " + why);
}

std::optional<double> opt_number(std::string_view f, std::size_t line) {
  if (f == "NULL") return std::nullopt;
  if (auto v = parse_number(f)) return v;
  malformed_at(line, "bad numeric field '" + std::string(f) + "'");
}

int tag_field(std::string_view f, std::size_t line) {
  if (auto v = parse_int(f)) return *v;
  malformed_at(line, "bad type tag '" + std::string(f) + "'");
}

std::size_t width_of(const ColumnSpec& c, const Catalog& catalog) {
  switch (c.kind) {
    case ColumnKind::Type2: return 5;
    case ColumnKind::Type3:
      return 1 + 2 * static_cast<std::size_t>(catalog.column_meta(c.binding->obj, c.binding->col).len);
    default: return 1;
  }
}

}  // namespace

std::string serialize_relation(const Relation& rel, const Catalog& catalog) {
  std::ostringstream out;
  out << kMagic << '\n';
  out << "table " << rel.name() << '\n';
  out << "catalog " << std::hex << std::setw(16) << std::setfill('0')
      << catalog_fingerprint(catalog) << std::dec << '\n';
  for (const auto& c : rel.schema()) {
    out << "column " << c.name << ' ' << column_kind_name(c.kind);
    if (c.binding) out << ' ' << c.binding->obj << '.' << c.binding->col;
    out << '\n';
  }
  if (!rel.key_columns().empty()) {
    out << "key";
    for (auto i : rel.key_columns()) out << ' ' << rel.schema()[i].name;
    out << '\n';
  }
  for (const auto& t : rel.tuples()) {
    out << "row";
    for (std::size_t i = 0; i < rel.schema().size(); ++i) {
      const auto& spec = rel.schema()[i];
      const auto& cell = t.values[i];
      switch (spec.kind) {
        case ColumnKind::CrispNumeric:
        case ColumnKind::Type1: out << '\t' << format_number(std::get<double>(cell)); break;
        case ColumnKind::CrispText: out << '\t' << nlohmann::json(std::get<std::string>(cell)).dump(); break;
        case ColumnKind::Type2: {
          const auto enc = encode_type2(std::get<FuzzyValue2>(cell), catalog, spec.binding->obj,
                                        spec.binding->col);
          out << '\t' << enc.ft;
          for (const auto& v : enc.v) out << '\t' << field(v);
          break;
        }
        case ColumnKind::Type3: {
          const auto& meta = catalog.column_meta(spec.binding->obj, spec.binding->col);
          const auto enc = encode_type3(std::get<FuzzyValue3>(cell), meta.len, catalog,
                                        spec.binding->obj, spec.binding->col);
          out << '\t' << enc.ft;
          for (const auto& slot : enc.slots) {
            if (slot) out << '\t' << format_number(slot->fp) << '\t' << slot->f;
            else out << "\tNULL\tNULL";
          }
          break;
        }
      }
    }
    out << '\n';
  }
  return out.str();
}

Relation deserialize_relation(std::string_view text, const Catalog& catalog) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line) || trim(line) != kMagic) {
    throw Error(ErrorCode::MalformedRow, "not a fuzzydb table file");
  }
  ++line_no;

  std::string name;
  std::vector<ColumnSpec> schema;
  std::vector<std::string> key;
  std::vector<std::string> rows;
  std::vector<std::size_t> row_lines;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    if (line.starts_with("row\t") || line == "row") {
      rows.push_back(line);
      row_lines.push_back(line_no);
      continue;
    }
    std::istringstream words{line};
    std::string tag;
    words >> tag;
    if (tag == "table") {
      words >> name;
    } else if (tag == "catalog") {
      // informational; label ids are checked cell by cell
    } else if (tag == "column") {
      std::string cname, kind, binding;
      words >> cname >> kind >> binding;
      const auto k = parse_column_kind(kind);
      if (!k) malformed_at(line_no, "unknown column kind '" + kind + "'");
      ColumnSpec spec{cname, *k, std::nullopt};
      if (!binding.empty()) {
        const auto dot = binding.find('.');
        if (dot == std::string::npos) malformed_at(line_no, "bad catalog binding '" + binding + "'");
        spec.binding = CatalogBinding{binding.substr(0, dot), binding.substr(dot + 1)};
      }
      schema.push_back(std::move(spec));
    } else if (tag == "key") {
      std::string k;
      while (words >> k) key.push_back(k);
    } else {
      malformed_at(line_no, "unexpected line '" + line + "'");
    }
  }

  std::optional<Relation> rel;
  try {
    rel.emplace(name, schema, key, catalog);
  } catch (const Error& e) {
    throw Error(ErrorCode::CatalogMismatch, std::string("table header does not fit the catalog: ") + e.what());
  }

  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::size_t ln = row_lines[r];
    const auto fields = split_tabs(rows[r]);
    std::size_t width = 1;
    for (const auto& c : schema) width += width_of(c, catalog);
    if (fields.size() != width) {
      malformed_at(ln, "expected " + std::to_string(width - 1) + " fields, got " +
                           std::to_string(fields.size() - 1));
    }
    Tuple t;
    std::size_t f = 1;
    try {
      for (const auto& c : schema) {
        switch (c.kind) {
          case ColumnKind::CrispNumeric:
          case ColumnKind::Type1: {
            const auto v = opt_number(fields[f++], ln);
            if (!v) malformed_at(ln, "NULL in crisp column " + c.name);
            t.values.emplace_back(*v);
            break;
          }
          case ColumnKind::CrispText: {
            const auto j = nlohmann::json::parse(fields[f++], nullptr, false);
            if (!j.is_string()) malformed_at(ln, "bad text field in column " + c.name);
            t.values.emplace_back(j.get<std::string>());
            break;
          }
          case ColumnKind::Type2: {
            EncodedRow2 enc;
            enc.ft = tag_field(fields[f++], ln);
            for (auto& v : enc.v) v = opt_number(fields[f++], ln);
            t.values.emplace_back(decode_type2(enc, catalog, c.binding->obj, c.binding->col));
            break;
          }
          case ColumnKind::Type3: {
            const auto& meta = catalog.column_meta(c.binding->obj, c.binding->col);
            EncodedRow3 enc;
            enc.ft = tag_field(fields[f++], ln);
            for (int s = 0; s < meta.len; ++s) {
              const auto fp = opt_number(fields[f++], ln);
              const auto id = fields[f++];
              if (fp.has_value() != (id != "NULL")) malformed_at(ln, "half-empty slot in " + c.name);
              if (!fp) {
                enc.slots.emplace_back(std::nullopt);
                continue;
              }
              const auto iv = parse_int(id);
              if (!iv) malformed_at(ln, "bad label id '" + std::string(id) + "'");
              enc.slots.emplace_back(EncodedSlot{*fp, *iv});
            }
            t.values.emplace_back(decode_type3(enc, catalog, c.binding->obj, c.binding->col));
            break;
          }
        }
      }
      rel->insert(std::move(t), catalog);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::UnknownLabelId || e.code() == ErrorCode::UnknownLabel) {
        throw Error(ErrorCode::CatalogMismatch, "line " + std::to_string(ln) + ": " + e.what());
      }
      if (e.code() == ErrorCode::MalformedRow && std::string_view(e.what()).starts_with("line ")) throw;
      throw Error(e.code(), "line " + std::to_string(ln) + ": " + e.what());
    }
  }
  return std::move(*rel);
}

void save_relation(const Relation& rel, const Catalog& catalog, const std::filesystem::path& path) {
  const std::string text = serialize_relation(rel, catalog);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::IoFailure, "cannot write " + path.string());
  out << text;
  out.close();
  if (!out) throw Error(ErrorCode::IoFailure, "write failed for " + path.string());
}

Relation load_relation(const std::filesystem::path& path, const Catalog& catalog) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoFailure, "cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return deserialize_relation(buf.str(), catalog);
}

Relation& Database::create_table(std::string name, std::vector<ColumnSpec> schema,
                                 const std::vector<std::string>& primary_key) {
  if (has_table(name)) throw Error(ErrorCode::DuplicateTable, "table " + name + " already exists");
  Relation rel{name, std::move(schema), primary_key, catalog()};
  return tables_.emplace(std::move(name), std::move(rel)).first->second;
}

void Database::add_table(Relation rel) {
  if (has_table(rel.name())) {
    throw Error(ErrorCode::DuplicateTable, "table " + rel.name() + " already exists");
  }
  std::string name = rel.name();
  tables_.emplace(std::move(name), std::move(rel));
}

void Database::replace_table(Relation rel) {
  std::string name = rel.name();
  tables_.insert_or_assign(std::move(name), std::move(rel));
}

bool Database::has_table(std::string_view name) const { return tables_.find(name) != tables_.end(); }

const Relation& Database::table(std::string_view name) const {
  const auto it = tables_.find(name);
  if (it == tables_.end()) throw Error(ErrorCode::NoSuchTable, "no table " + std::string(name));
  return it->second;
}

Relation& Database::table(std::string_view name) {
  return const_cast<Relation&>(std::as_const(*this).table(name));
}

std::vector<std::string> Database::table_names() const {
  std::vector<std::string> out;
  for (const auto& [name, rel] : tables_) out.push_back(name);
  return out;
}

}  // namespace fuzzydb
