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

#include "fuzzydb/error.hpp"

#include <sstream>

namespace fuzzydb {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidValue: return "InvalidValue";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::UnknownLabelId: return "UnknownLabelId";
    case ErrorCode::DuplicateColumn: return "DuplicateColumn";
    case ErrorCode::BadLen: return "BadLen";
    case ErrorCode::NoSuchColumn: return "NoSuchColumn";
    case ErrorCode::DuplicateLabelId: return "DuplicateLabelId";
    case ErrorCode::DuplicateLabelName: return "DuplicateLabelName";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::NoSuchLabel: return "NoSuchLabel";
    case ErrorCode::NotTrapezoidalLabel: return "NotTrapezoidalLabel";
    case ErrorCode::BadShape: return "BadShape";
    case ErrorCode::DuplicateTrapezoid: return "DuplicateTrapezoid";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::SelfPair: return "SelfPair";
    case ErrorCode::ConflictingDegree: return "ConflictingDegree";
    case ErrorCode::ScriptNameCollision: return "ScriptNameCollision";
    case ErrorCode::MalformedRow: return "MalformedRow";
    case ErrorCode::TooManyPairs: return "TooManyPairs";
    case ErrorCode::DuplicateTable: return "DuplicateTable";
    case ErrorCode::UnboundFuzzyColumn: return "UnboundFuzzyColumn";
    case ErrorCode::KeyNotCrisp: return "KeyNotCrisp";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::DuplicateKey: return "DuplicateKey";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::CatalogMismatch: return "CatalogMismatch";
    case ErrorCode::NoCatalog: return "NoCatalog";
    case ErrorCode::CatalogFrozen: return "CatalogFrozen";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::TypeIncompatible: return "TypeIncompatible";
    case ErrorCode::NoSuchTable: return "NoSuchTable";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

std::string SyntaxError::diagnostic(std::string_view source) const {
  std::ostringstream out;
  out << "syntax error at " << line_ << ':' << column_ << ": " << what();
  if (!expected_.empty()) {
    out << " (expected ";
    for (std::size_t i = 0; i < expected_.size(); ++i) {
      if (i) out << ", ";
      out << expected_[i];
    }
    out << ')';
  }
  out << '\n';

  std::size_t current = 1;
  std::size_t begin = 0;
  while (current < line_ && begin < source.size()) {
    const auto nl = source.find('\n', begin);
    if (nl == std::string_view::npos) {
      begin = source.size();
      break;
    }
    begin = nl + 1;
    ++current;
  }
  auto end = source.find('\n', begin);
  if (end == std::string_view::npos) end = source.size();
  out << "  " << source.substr(begin, end - begin) << '\n';
  out << "  " << std::string(column_ > 0 ? column_ - 1 : 0, ' ') << "^\n";
  return out.str();
}

}  // namespace fuzzydb
