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

#include <doctest.h>

#include <cmath>

#include "fuzzydb/encoding.hpp"
#include "fuzzydb/error.hpp"
#include "support/expect.hpp"
#include "support/generators.hpp"

using namespace fuzzydb;
using testsupport::code_of;

namespace {

const std::optional<double> kNone;

double ulp(double x) { return std::nextafter(std::abs(x), INFINITY) - std::abs(x); }

EncodedRow2 row2(int ft, std::optional<double> a, std::optional<double> b, std::optional<double> c,
                 std::optional<double> d) {
  return {ft, {a, b, c, d}};
}

}  // namespace

TEST_CASE("type 2 protocol rows") {
  const auto cat = testsupport::case_study().catalog;
  auto enc = [&](const FuzzyValue2& v) { return encode_type2(v, cat, "Rollos", "Diametro"); };
  CHECK(enc(FuzzyValue2::unknown()) == row2(0, kNone, kNone, kNone, kNone));
  CHECK(enc(FuzzyValue2::undefined()) == row2(1, kNone, kNone, kNone, kNone));
  CHECK(enc(FuzzyValue2::null()) == row2(2, kNone, kNone, kNone, kNone));
  CHECK(enc(FuzzyValue2::crisp(41)) == row2(3, 41, kNone, kNone, kNone));
  CHECK(enc(FuzzyValue2::label("Normal")) == row2(4, 1, kNone, kNone, kNone));
  CHECK(enc(FuzzyValue2::interval(3, 7)) == row2(5, 3, kNone, kNone, 7));
  CHECK(enc(FuzzyValue2::approx(8, 1)) == row2(6, 8, 7, 9, 1));
  CHECK(enc(FuzzyValue2::trapezoid({50, 70, 100, 130})) == row2(7, 50, 20, -30, 130));
  CHECK(code_of([&] { enc(FuzzyValue2::label("Enorme")); }) == ErrorCode::UnknownLabel);
}

TEST_CASE("type 2 decoding") {
  const auto cat = testsupport::case_study().catalog;
  auto dec = [&](const EncodedRow2& r) { return decode_type2(r, cat, "Rollos", "Diametro"); };
  CHECK(dec(row2(3, 41, kNone, kNone, kNone)) == FuzzyValue2::crisp(41));
  CHECK(dec(row2(7, 50, 20, -30, 130)) == FuzzyValue2::trapezoid({50, 70, 100, 130}));
  CHECK(dec(row2(4, 2, kNone, kNone, kNone)) == FuzzyValue2::label("Rango_max"));
  CHECK(code_of([&] { dec(row2(4, 9, kNone, kNone, kNone)); }) == ErrorCode::UnknownLabelId);
  CHECK(code_of([&] { dec(row2(3, kNone, kNone, kNone, kNone)); }) == ErrorCode::MalformedRow);
  CHECK(code_of([&] { dec(row2(0, 1, kNone, kNone, kNone)); }) == ErrorCode::MalformedRow);
  CHECK(code_of([&] { dec(row2(5, 7, kNone, kNone, 3)); }) == ErrorCode::MalformedRow);
  CHECK(code_of([&] { dec(row2(6, 8, 6, 9, 1)); }) == ErrorCode::MalformedRow);
  CHECK(code_of([&] { dec(row2(7, 50, 20, 30, 130)); }) == ErrorCode::MalformedRow);
  CHECK(code_of([&] { dec(row2(8, kNone, kNone, kNone, kNone)); }) == ErrorCode::MalformedRow);
}

TEST_CASE("type 3 protocol rows") {
  const auto cat = testsupport::case_study().catalog;
  auto enc = [&](const FuzzyValue3& v, int len) { return encode_type3(v, len, cat, "Rollos", "Estado"); };
  const auto simple = enc(FuzzyValue3::simple({0.5, "Curvas"}), 9);
  CHECK(simple.ft == 3);
  REQUIRE(simple.slots.size() == 9);
  CHECK(simple.slots[0] == EncodedSlot{0.5, 5});
  CHECK_FALSE(simple.slots[1].has_value());
  const auto dist = enc(FuzzyValue3::distribution({{0.5, "Sucio"}, {1, "Humedo"}}), 9);
  CHECK(dist.ft == 4);
  CHECK(dist.slots[1] == EncodedSlot{1, 2});
  CHECK(enc(FuzzyValue3::null(), 9).ft == 2);

  std::vector<PossPair> eleven;
  for (int i = 0; i < 11; ++i) eleven.emplace_back(1.0, "L" + std::to_string(i));
  CHECK(code_of([&] { enc(FuzzyValue3::distribution(eleven), 9); }) == ErrorCode::TooManyPairs);

  auto dec = [&](const EncodedRow3& r) { return decode_type3(r, cat, "Rollos", "Estado"); };
  CHECK(dec(dist) == FuzzyValue3::distribution({{0.5, "Sucio"}, {1, "Humedo"}}));
  EncodedRow3 gap = dist;
  gap.slots[0].reset();
  CHECK(code_of([&] { dec(gap); }) == ErrorCode::MalformedRow);
  EncodedRow3 short_row = dist;
  short_row.slots.pop_back();
  CHECK(code_of([&] { dec(short_row); }) == ErrorCode::MalformedRow);
  EncodedRow3 two_simple = dist;
  two_simple.ft = 3;
  CHECK(code_of([&] { dec(two_simple); }) == ErrorCode::MalformedRow);
  EncodedRow3 zero_p = dist;
  zero_p.slots[0]->fp = 0.0;
  CHECK(code_of([&] { dec(zero_p); }) == ErrorCode::MalformedRow);
  EncodedRow3 bad_id = dist;
  bad_id.slots[0]->f = 42;
  CHECK(code_of([&] { dec(bad_id); }) == ErrorCode::UnknownLabelId);
}

TEST_CASE("encoding round trip on the exact grid") {
  const auto cat = testsupport::case_study().catalog;
  const auto diam = testsupport::label_names(cat, "Rollos", "Diametro");
  const auto estado = testsupport::label_names(cat, "Rollos", "Estado");
  testsupport::Gen g{5};
  for (int i = 0; i < 3000; ++i) {
    const auto v2 = g.value2(diam);
    CHECK(decode_type2(encode_type2(v2, cat, "Rollos", "Diametro"), cat, "Rollos", "Diametro") == v2);
    const auto v3 = g.value3(estado, 9);
    CHECK(decode_type3(encode_type3(v3, 9, cat, "Rollos", "Estado"), cat, "Rollos", "Estado") == v3);
  }
}

TEST_CASE("trapezoid encoding on arbitrary doubles stays within rounding") {
  // beta - alpha and gamma - delta round when the corners are not on a
  // common grid; decoding then lands within an ulp or so of the original.
  const auto cat = testsupport::case_study().catalog;
  testsupport::Gen g{13};
  int exact = 0;
  for (int i = 0; i < 2000; ++i) {
    const Trapezoid t = g.trapezoid(false);
    const auto back = decode_type2(encode_type2(FuzzyValue2::trapezoid(t), cat, "Rollos", "Diametro"),
                                   cat, "Rollos", "Diametro");
    const auto& u = std::get<Trapezoid>(back.get());
    CHECK(u.alpha() == t.alpha());
    CHECK(u.delta() == t.delta());
    CHECK(std::abs(u.beta() - t.beta()) <= 2 * ulp(std::max(std::abs(t.beta()), std::abs(t.alpha()))));
    CHECK(std::abs(u.gamma() - t.gamma()) <= 2 * ulp(std::max(std::abs(t.gamma()), std::abs(t.delta()))));
    exact += back == FuzzyValue2::trapezoid(t);
  }
  MESSAGE("exact trapezoid round trips on arbitrary doubles: " << exact << "/2000");
}
