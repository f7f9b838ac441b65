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

// Physical representation protocols for fuzzy values and the loader-script
// dialect for the catalog tables.
//
// Type 2 (ordered domain), one type tag FT plus four value fields:
//
//   FT  value        V1        V2          V3          V4
//   0   UNKNOWN      -         -           -           -
//   1   UNDEFINED    -         -           -           -
//   2   NULL         -         -           -           -
//   3   CRISP d      d         -           -           -
//   4   LABEL        FUZZY_ID  -           -           -
//   5   INTERVAL     n         -           -           m
//   6   APPROX d     d         d-margin    d+margin    margin
//   7   TRAPEZOID    alpha     beta-alpha  gamma-delta delta
//
// V3 of a trapezoid is gamma - delta, which is never positive.
//
// Type 3 (scalar domain): FT 0..4 (UNKNOWN, UNDEFINED, NULL, SIMPLE,
// DISTRIBUTION) followed by LEN (possibility, label id) slots. Used slots
// form a prefix; SIMPLE uses exactly the first one.

#pragma once

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fuzzydb/catalog.hpp"
#include "fuzzydb/fuzzy_core.hpp"

namespace fuzzydb {

struct EncodedRow2 {
  int ft = 0;
  std::array<std::optional<double>, 4> v{};
  friend bool operator==(const EncodedRow2&, const EncodedRow2&) = default;
};

struct EncodedSlot {
  double fp = 0;
  int f = 0;
  friend bool operator==(const EncodedSlot&, const EncodedSlot&) = default;
};

struct EncodedRow3 {
  int ft = 0;
  std::vector<std::optional<EncodedSlot>> slots;  // exactly LEN entries
  friend bool operator==(const EncodedRow3&, const EncodedRow3&) = default;
};

/// Label names resolve against the FOL rows of (obj, col).
EncodedRow2 encode_type2(const FuzzyValue2& v, const Catalog& catalog, std::string_view obj,
                         std::string_view col);
/// Throws MalformedRow when the null pattern does not match FT, and
/// UnknownLabelId for a label id missing from the catalog.
FuzzyValue2 decode_type2(const EncodedRow2& row, const Catalog& catalog, std::string_view obj,
                         std::string_view col);

/// Throws TooManyPairs when the distribution is longer than `len`.
EncodedRow3 encode_type3(const FuzzyValue3& v, int len, const Catalog& catalog,
                         std::string_view obj, std::string_view col);
FuzzyValue3 decode_type3(const EncodedRow3& row, const Catalog& catalog, std::string_view obj,
                         std::string_view col);

/// t_ + upper-cased table name ("t_PILAS").
std::string table_identifier(std::string_view obj);
/// c_ + first letter of the table + column, upper-cased ("c_PLARGO").
std::string column_identifier(std::string_view obj, std::string_view col);

/// INSERT statements for every catalog row: all FCL rows, then FOL, FLD and
/// FND, each group following catalog order. A comment header maps the
/// generated identifiers back to the original names so that
/// parse_loader_script can rebuild an identical document.
std::string emit_loader_script(const CatalogDocument& doc);
std::string emit_loader_script(const Catalog& catalog);

/// Reads the INSERT dialect. Without the name header, table and column
/// names come from the FCL USER path and labels keep their script text.
std::vector<CatalogRecord> parse_loader_script(std::string_view text);

}  // namespace fuzzydb
