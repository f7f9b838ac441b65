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

#include <cmath>
#include <set>
#include <string>

#include "fuzzydb/encoding.hpp"
#include "fuzzydb/error.hpp"

namespace fuzzydb {

namespace {

[[noreturn]] void malformed(const std::string& why) { throw Error(ErrorCode::MalformedRow, why); }

// Which of V1..V4 carry a value for each Type-2 tag.
constexpr std::array<std::array<bool, 4>, 8> kPattern2{{
    {false, false, false, false},
    {false, false, false, false},
    {false, false, false, false},
    {true, false, false, false},
    {true, false, false, false},
    {true, false, false, true},
    {true, true, true, true},
    {true, true, true, true},
}};

int label_id_from_field(double v) {
  if (!(v >= 0.0) || v != std::floor(v) || v > 2147483647.0) {
    malformed("label id field " + std::to_string(v) + " is not a non-negative integer");
  }
  return static_cast<int>(v);
}

}  // namespace

EncodedRow2 encode_type2(const FuzzyValue2& v, const Catalog& catalog, std::string_view obj,
                         std::string_view col) {
  EncodedRow2 out;
  out.ft = v.tag();
  struct Visitor {
    EncodedRow2& out;
    const Catalog& catalog;
    std::string_view obj, col;
    void operator()(const Unknown&) const {}
    void operator()(const Undefined&) const {}
    void operator()(const Null&) const {}
    void operator()(const Crisp& c) const { out.v[0] = c.value; }
    void operator()(const LabelRef& l) const {
      out.v[0] = static_cast<double>(catalog.label_id_by_name(obj, col, l.name));
    }
    void operator()(const Interval& i) const {
      out.v[0] = i.lo;
      out.v[3] = i.hi;
    }
    void operator()(const Approx& a) const {
      out.v = {a.center, a.center - a.margin, a.center + a.margin, a.margin};
    }
    void operator()(const Trapezoid& t) const {
      out.v = {t.alpha(), t.beta() - t.alpha(), t.gamma() - t.delta(), t.delta()};
    }
  };
  std::visit(Visitor{out, catalog, obj, col}, v.get());
  return out;
}

FuzzyValue2 decode_type2(const EncodedRow2& row, const Catalog& catalog, std::string_view obj,
                         std::string_view col) {
  if (row.ft < 0 || row.ft > 7) malformed("unknown Type-2 tag " + std::to_string(row.ft));
  const auto& pattern = kPattern2[static_cast<std::size_t>(row.ft)];
  for (std::size_t i = 0; i < 4; ++i) {
    if (row.v[i].has_value() != pattern[i]) {
      malformed("tag " + std::to_string(row.ft) + (pattern[i] ? " requires" : " forbids") +
                " V" + std::to_string(i + 1));
    }
    if (row.v[i] && !std::isfinite(*row.v[i])) malformed("non-finite value field");
  }
  try {
    switch (row.ft) {
      case 0: return FuzzyValue2::unknown();
      case 1: return FuzzyValue2::undefined();
      case 2: return FuzzyValue2::null();
      case 3: return FuzzyValue2::crisp(*row.v[0]);
      case 4: {
        const int id = label_id_from_field(*row.v[0]);
        if (!catalog.has_label_id(obj, col, id)) {
          throw Error(ErrorCode::UnknownLabelId, "label id " + std::to_string(id) +
                                                     " is not defined on " + std::string(obj) +
                                                     "." + std::string(col));
        }
        return FuzzyValue2::label(catalog.label_name_by_id(obj, col, id));
      }
      case 5: return FuzzyValue2::interval(*row.v[0], *row.v[3]);
      case 6: {
        const double d = *row.v[0], margin = *row.v[3];
        if (*row.v[1] != d - margin || *row.v[2] != d + margin) {
          malformed("approximate value bounds disagree with its margin");
        }
        return FuzzyValue2::approx(d, margin);
      }
      default: {
        const double alpha = *row.v[0], delta = *row.v[3];
        return FuzzyValue2::trapezoid(
            Trapezoid{alpha, alpha + *row.v[1], delta + *row.v[2], delta});
      }
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::UnknownLabelId) throw;
    malformed(e.what());
  }
}

EncodedRow3 encode_type3(const FuzzyValue3& v, int len, const Catalog& catalog,
                         std::string_view obj, std::string_view col) {
  if (len < 1) throw Error(ErrorCode::BadLen, "LEN must be at least 1");
  const auto pairs = v.pairs();
  if (pairs.size() > static_cast<std::size_t>(len)) {
    throw Error(ErrorCode::TooManyPairs, "distribution has " + std::to_string(pairs.size()) +
                                             " pairs but LEN is " + std::to_string(len));
  }
  EncodedRow3 out;
  out.ft = v.tag();
  out.slots.assign(static_cast<std::size_t>(len), std::nullopt);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    out.slots[i] =
        EncodedSlot{pairs[i].possibility(), catalog.label_id_by_name(obj, col, pairs[i].label())};
  }
  return out;
}

FuzzyValue3 decode_type3(const EncodedRow3& row, const Catalog& catalog, std::string_view obj,
                         std::string_view col) {
  if (row.ft < 0 || row.ft > 4) malformed("unknown Type-3 tag " + std::to_string(row.ft));
  const auto& meta = catalog.column_meta(obj, col);
  if (row.slots.size() != static_cast<std::size_t>(meta.len)) {
    malformed("row has " + std::to_string(row.slots.size()) + " slots but LEN is " +
              std::to_string(meta.len));
  }
  std::size_t used = 0;
  while (used < row.slots.size() && row.slots[used]) ++used;
  for (std::size_t i = used; i < row.slots.size(); ++i) {
    if (row.slots[i]) malformed("used slots must form a prefix");
  }
  const std::size_t want_min = row.ft == 4 ? 1 : (row.ft == 3 ? 1 : 0);
  const std::size_t want_max = row.ft == 4 ? row.slots.size() : want_min;
  if (used < want_min || used > want_max) {
    malformed("tag " + std::to_string(row.ft) + " cannot carry " + std::to_string(used) +
              " pairs");
  }

  std::vector<PossPair> pairs;
  std::set<int> seen;
  for (std::size_t i = 0; i < used; ++i) {
    const auto& slot = *row.slots[i];
    if (!(slot.fp > 0.0 && slot.fp <= 1.0)) malformed("possibility outside (0, 1]");
    if (!seen.insert(slot.f).second) malformed("label id repeated in distribution");
    if (!catalog.has_label_id(obj, col, slot.f)) {
      throw Error(ErrorCode::UnknownLabelId, "label id " + std::to_string(slot.f) +
                                                 " is not defined on " + std::string(obj) + "." +
                                                 std::string(col));
    }
    pairs.emplace_back(slot.fp, catalog.label_name_by_id(obj, col, slot.f));
  }
  switch (row.ft) {
    case 0: return FuzzyValue3::unknown();
    case 1: return FuzzyValue3::undefined();
    case 2: return FuzzyValue3::null();
    case 3: return FuzzyValue3::simple(std::move(pairs.front()));
    default: return FuzzyValue3::distribution(std::move(pairs));
  }
}

}  // namespace fuzzydb
