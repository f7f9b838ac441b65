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

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fuzzydb {

enum class ErrorCode {
  InvalidValue,
  UnknownLabel,
  UnknownLabelId,
  // catalog
  DuplicateColumn,
  BadLen,
  NoSuchColumn,
  DuplicateLabelId,
  DuplicateLabelName,
  TypeMismatch,
  NoSuchLabel,
  NotTrapezoidalLabel,
  BadShape,
  DuplicateTrapezoid,
  DegreeOutOfRange,
  SelfPair,
  ConflictingDegree,
  ScriptNameCollision,
  // encoding
  MalformedRow,
  TooManyPairs,
  // storage
  DuplicateTable,
  UnboundFuzzyColumn,
  KeyNotCrisp,
  ArityMismatch,
  DuplicateKey,
  IoFailure,
  CatalogMismatch,
  NoCatalog,
  CatalogFrozen,
  // query
  SyntaxError,
  TypeIncompatible,
  NoSuchTable,
  // definition files
  ParseError,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the query parser and the text-format readers. Positions are
/// 1-based; `expected` lists the tokens that would have been accepted.
class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column,
              std::vector<std::string> expected = {})
      : Error(ErrorCode::SyntaxError, message),
        line_(line),
        column_(column),
        expected_(std::move(expected)) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }
  const std::vector<std::string>& expected() const noexcept { return expected_; }

  /// Message plus the offending source line with a caret under the column.
  std::string diagnostic(std::string_view source) const;

 private:
  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

}  // namespace fuzzydb
