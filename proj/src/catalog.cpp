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

#include "fuzzydb/catalog.hpp"

#include <algorithm>
#include <string>

#include "fuzzydb/error.hpp"
#include "fuzzydb/text.hpp"

namespace fuzzydb {

namespace {

std::string where(std::string_view obj, std::string_view col) {
  return std::string(obj) + "." + std::string(col);
}

void require_name(const std::string& name, const char* what) {
  if (name.empty()) throw Error(ErrorCode::InvalidValue, std::string("empty ") + what);
  for (char c : name) {
    if (c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\'' || c == '.' || c == ',') {
      throw Error(ErrorCode::InvalidValue,
                  std::string(what) + " '" + name + "' contains a reserved character");
    }
  }
}

}  // namespace

const Catalog::ColumnEntry* Catalog::find(std::string_view obj, std::string_view col) const {
  for (const auto& c : columns_) {
    if (c.meta.obj == obj && c.meta.col == col) return &c;
  }
  return nullptr;
}

Catalog::ColumnEntry* Catalog::find(std::string_view obj, std::string_view col) {
  return const_cast<ColumnEntry*>(std::as_const(*this).find(obj, col));
}

const Catalog::ColumnEntry& Catalog::get(std::string_view obj, std::string_view col) const {
  const auto* c = find(obj, col);
  if (!c) throw Error(ErrorCode::NoSuchColumn, "no fuzzy column " + where(obj, col));
  return *c;
}

const Catalog::LabelEntry& Catalog::label(std::string_view obj, std::string_view col,
                                          int id) const {
  const auto* c = find(obj, col);
  if (!c) throw Error(ErrorCode::NoSuchLabel, "no fuzzy column " + where(obj, col));
  const auto it = c->labels.find(id);
  if (it == c->labels.end()) {
    throw Error(ErrorCode::NoSuchLabel,
                "no label id " + std::to_string(id) + " on " + where(obj, col));
  }
  return it->second;
}

void Catalog::register_column(const FclRow& row) {
  require_name(row.obj, "object name");
  require_name(row.col, "column name");
  if (row.f_type < 1 || row.f_type > 3) {
    throw Error(ErrorCode::InvalidValue,
                "F_TYPE must be 1, 2 or 3, got " + std::to_string(row.f_type));
  }
  if (find(row.obj, row.col)) {
    throw Error(ErrorCode::DuplicateColumn, "column " + where(row.obj, row.col) + " already registered");
  }
  if (row.len < 1) {
    throw Error(ErrorCode::BadLen, "LEN must be at least 1 for " + where(row.obj, row.col));
  }
  if (row.f_type != 3 && row.len != 1) {
    throw Error(ErrorCode::BadLen, "LEN must be 1 for a Type-" + std::to_string(row.f_type) +
                                       " column (" + where(row.obj, row.col) + ")");
  }
  columns_.push_back(ColumnEntry{row, {}, {}});
}

void Catalog::define_label(const FolRow& row) {
  auto* c = find(row.obj, row.col);
  if (!c) throw Error(ErrorCode::NoSuchColumn, "no fuzzy column " + where(row.obj, row.col));
  require_name(row.fuzzy_name, "label name");
  if (row.fuzzy_id < 0) {
    throw Error(ErrorCode::InvalidValue, "FUZZY_ID must be non-negative");
  }
  const int expected = c->meta.f_type == 3 ? kScalarLabel : kTrapezoidLabel;
  if (row.fuzzy_type != expected) {
    throw Error(ErrorCode::TypeMismatch,
                "FUZZY_TYPE " + std::to_string(row.fuzzy_type) + " does not fit Type-" +
                    std::to_string(c->meta.f_type) + " column " + where(row.obj, row.col) +
                    " (expected " + std::to_string(expected) + ")");
  }
  if (c->labels.contains(row.fuzzy_id)) {
    throw Error(ErrorCode::DuplicateLabelId, "label id " + std::to_string(row.fuzzy_id) +
                                                 " already defined on " + where(row.obj, row.col));
  }
  for (const auto& [id, entry] : c->labels) {
    if (entry.row.fuzzy_name == row.fuzzy_name) {
      throw Error(ErrorCode::DuplicateLabelName, "label '" + row.fuzzy_name +
                                                     "' already defined on " + where(row.obj, row.col));
    }
  }
  c->labels.emplace(row.fuzzy_id, LabelEntry{row, std::nullopt});
}

void Catalog::define_trapezoid(const FldRow& row) {
  const auto& entry = label(row.obj, row.col, row.fuzzy_id);
  if (entry.row.fuzzy_type != kTrapezoidLabel) {
    throw Error(ErrorCode::NotTrapezoidalLabel, "label '" + entry.row.fuzzy_name + "' on " +
                                                    where(row.obj, row.col) + " is a scalar label");
  }
  if (entry.shape) {
    throw Error(ErrorCode::DuplicateTrapezoid, "label '" + entry.row.fuzzy_name + "' on " +
                                                   where(row.obj, row.col) + " already has a trapezoid");
  }
  Trapezoid shape{row.alfa, row.beta, row.gamma, row.delta};  // BadShape
  find(row.obj, row.col)->labels.at(row.fuzzy_id).shape = shape;
}

void Catalog::define_similarity(const FndRow& row) {
  if (!(row.degree >= 0.0 && row.degree <= 1.0)) {
    throw Error(ErrorCode::DegreeOutOfRange,
                "DEGREE " + format_number(row.degree) + " outside [0, 1]");
  }
  if (row.id1 == row.id2) {
    throw Error(ErrorCode::SelfPair, "similarity of label id " + std::to_string(row.id1) +
                                         " with itself is implicitly 1");
  }
  for (int id : {row.id1, row.id2}) {
    const auto& entry = label(row.obj, row.col, id);
    if (entry.row.fuzzy_type != kScalarLabel) {
      throw Error(ErrorCode::TypeMismatch, "label '" + entry.row.fuzzy_name + "' on " +
                                               where(row.obj, row.col) + " is not a scalar label");
    }
  }
  auto& nearness = find(row.obj, row.col)->nearness;
  const std::pair key{std::min(row.id1, row.id2), std::max(row.id1, row.id2)};
  const auto it = nearness.find(key);
  if (it != nearness.end()) {
    if (it->second != row.degree) {
      throw Error(ErrorCode::ConflictingDegree,
                  "pair (" + std::to_string(key.first) + ", " + std::to_string(key.second) +
                      ") already has degree " + format_number(it->second));
    }
    return;
  }
  nearness.emplace(key, row.degree);
}

std::vector<Violation> Catalog::validate() const {
  std::vector<Violation> out;
  for (const auto& c : columns_) {
    const auto& m = c.meta;
    if (m.len < 1 || (m.f_type != 3 && m.len != 1)) {
      out.push_back({Violation::Severity::Error, "BadLen", m.obj, m.col, "invalid LEN"});
    }
    int expected_id = 0;
    for (const auto& [id, entry] : c.labels) {
      if (entry.row.fuzzy_type == kTrapezoidLabel && !entry.shape) {
        out.push_back({Violation::Severity::Error, "MissingTrapezoid", m.obj, m.col,
                       "label '" + entry.row.fuzzy_name + "' (id " + std::to_string(id) +
                           ") has no FLD row"});
      }
      if (id != expected_id) {
        out.push_back({Violation::Severity::Warning, "LabelIdGap", m.obj, m.col,
                       "label ids skip from " + std::to_string(expected_id - 1) + " to " +
                           std::to_string(id)});
      }
      expected_id = id + 1;
    }
    for (const auto& [key, degree] : c.nearness) {
      const auto a = c.labels.find(key.first);
      const auto b = c.labels.find(key.second);
      if (a == c.labels.end() || b == c.labels.end() ||
          a->second.row.fuzzy_type != kScalarLabel || b->second.row.fuzzy_type != kScalarLabel) {
        out.push_back({Violation::Severity::Error, "DanglingSimilarity", m.obj, m.col,
                       "FND pair references an invalid label"});
      }
    }
  }
  return out;
}

bool Catalog::is_valid() const {
  const auto v = validate();
  return std::none_of(v.begin(), v.end(),
                      [](const Violation& x) { return x.severity == Violation::Severity::Error; });
}

bool Catalog::has_column(std::string_view obj, std::string_view col) const {
  return find(obj, col) != nullptr;
}

const FclRow& Catalog::column_meta(std::string_view obj, std::string_view col) const {
  return get(obj, col).meta;
}

PopulationState Catalog::state(std::string_view obj, std::string_view col) const {
  const auto& c = get(obj, col);
  if (c.labels.empty()) return PopulationState::ColumnDeclared;
  for (const auto& [id, entry] : c.labels) {
    if (entry.row.fuzzy_type == kTrapezoidLabel && !entry.shape) {
      return PopulationState::AwaitingTrapezoids;
    }
  }
  return PopulationState::Complete;
}

int Catalog::label_id_by_name(std::string_view obj, std::string_view col,
                              std::string_view name) const {
  const auto& c = get(obj, col);
  for (const auto& [id, entry] : c.labels) {
    if (entry.row.fuzzy_name == name) return id;
  }
  throw Error(ErrorCode::UnknownLabel,
              "unknown label '" + std::string(name) + "' on " + where(obj, col));
}

const std::string& Catalog::label_name_by_id(std::string_view obj, std::string_view col,
                                             int id) const {
  return label(obj, col, id).row.fuzzy_name;
}

bool Catalog::has_label_id(std::string_view obj, std::string_view col, int id) const {
  const auto* c = find(obj, col);
  return c && c->labels.contains(id);
}

Trapezoid Catalog::trapezoid_of_label(std::string_view obj, std::string_view col, int id) const {
  const auto& entry = label(obj, col, id);
  if (entry.row.fuzzy_type != kTrapezoidLabel) {
    throw Error(ErrorCode::NotTrapezoidalLabel,
                "label '" + entry.row.fuzzy_name + "' is a scalar label");
  }
  if (!entry.shape) {
    throw Error(ErrorCode::NoSuchLabel,
                "label '" + entry.row.fuzzy_name + "' has no trapezoid yet");
  }
  return *entry.shape;
}

Trapezoid Catalog::trapezoid_of_label(std::string_view obj, std::string_view col,
                                      std::string_view name) const {
  return trapezoid_of_label(obj, col, label_id_by_name(obj, col, name));
}

SimilarityRelation Catalog::similarity_relation_of_column(std::string_view obj,
                                                          std::string_view col) const {
  const auto& c = get(obj, col);
  std::map<int, std::string> labels;
  for (const auto& [id, entry] : c.labels) labels.emplace(id, entry.row.fuzzy_name);
  return SimilarityRelation{std::move(labels), c.nearness};
}

std::vector<FclRow> Catalog::fcl_rows() const {
  std::vector<FclRow> out;
  for (const auto& c : columns_) out.push_back(c.meta);
  return out;
}

std::vector<FolRow> Catalog::fol_rows() const {
  std::vector<FolRow> out;
  for (const auto& c : columns_) {
    for (const auto& [id, entry] : c.labels) out.push_back(entry.row);
  }
  return out;
}

std::vector<FldRow> Catalog::fld_rows() const {
  std::vector<FldRow> out;
  for (const auto& c : columns_) {
    for (const auto& [id, entry] : c.labels) {
      if (!entry.shape) continue;
      const auto& t = *entry.shape;
      out.push_back({c.meta.obj, c.meta.col, id, t.alpha(), t.beta(), t.gamma(), t.delta()});
    }
  }
  return out;
}

std::vector<FndRow> Catalog::fnd_rows() const {
  std::vector<FndRow> out;
  for (const auto& c : columns_) {
    for (const auto& [key, degree] : c.nearness) {
      out.push_back({c.meta.obj, c.meta.col, key.first, key.second, degree});
    }
  }
  return out;
}

bool CatalogLoadResult::ok() const {
  return std::none_of(violations.begin(), violations.end(), [](const Violation& v) {
    return v.severity == Violation::Severity::Error;
  });
}

}  // namespace fuzzydb
