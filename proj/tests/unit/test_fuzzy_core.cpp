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

#include "fuzzydb/error.hpp"
#include "fuzzydb/fuzzy_core.hpp"
#include "oracles/oracles.hpp"
#include "support/generators.hpp"

using namespace fuzzydb;

namespace {

const Trapezoid kRangoMin{50, 70, 100, 130};
const Trapezoid kNormal{100, 150, 170, 220};

LabelResolver diametro() {
  return [](std::string_view name) -> Trapezoid {
    if (name == "Rango_min") return kRangoMin;
    if (name == "Normal") return kNormal;
    throw Error(ErrorCode::UnknownLabel, std::string(name));
  };
}

oracle::Trap trap(const Trapezoid& t) { return {t.alpha(), t.beta(), t.gamma(), t.delta()}; }

SimilarityRelation estado() {
  std::map<int, std::string> labels{{0, "Englobado"}, {1, "Deslaminado"}, {2, "Humedo"},
                                    {3, "Sucio"},     {4, "Rayas"},       {5, "Curvas"},
                                    {6, "Empalme_defectuoso"}, {7, "Orilla_crespa"}, {8, "Disparejo"}};
  return SimilarityRelation{labels, {{{0, 5}, 0.3}, {{0, 6}, 0.5}, {{0, 7}, 0.6},
                                     {{1, 6}, 0.8}, {{1, 8}, 0.1}, {{0, 2}, 0.0}}};
}

}  // namespace

TEST_CASE("membership degree range") {
  CHECK(MembershipDegree{0.0}.value() == 0.0);
  CHECK(MembershipDegree{1.0}.value() == 1.0);
  CHECK_THROWS_AS(MembershipDegree{1.5}, Error);
  CHECK_THROWS_AS(MembershipDegree{-0.1}, Error);
  CHECK_THROWS_AS(MembershipDegree{std::nan("")}, Error);
}

TEST_CASE("trapezoid shape") {
  CHECK_NOTHROW(Trapezoid{1, 1, 1, 1});
  try {
    Trapezoid{3, 2, 4, 5};
    FAIL("expected BadShape");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadShape);
  }
  CHECK_THROWS_AS(Trapezoid(0, 1, INFINITY, 2), Error);
}

TEST_CASE("trapezoid membership") {
  CHECK(trapezoid_membership(kNormal, 160).value() == 1.0);
  CHECK(trapezoid_membership(kNormal, 402).value() == 0.0);
  CHECK(trapezoid_membership(kNormal, 125).value() == doctest::Approx(0.5));
  CHECK(trapezoid_membership(kNormal, 195).value() == doctest::Approx(0.5));
  CHECK(trapezoid_membership(kNormal, 100).value() == 0.0);
  // Degenerate ramps keep the corner at 1.
  CHECK(trapezoid_membership(Trapezoid{5, 5, 8, 9}, 5).value() == 1.0);
  CHECK(trapezoid_membership(Trapezoid{5, 6, 9, 9}, 9).value() == 1.0);
  CHECK(trapezoid_membership(Trapezoid::point(400), 400).value() == 1.0);
}

TEST_CASE("possibility of published labels") {
  CHECK(possibility(kRangoMin, kNormal).value() == doctest::Approx(0.375).epsilon(1e-12));
  CHECK(possibility(kNormal, kNormal).value() == 1.0);
  CHECK(possibility(kRangoMin, Trapezoid{190, 220, 250, 300}).value() == 0.0);
}

TEST_CASE("possibility properties") {
  testsupport::Gen g{7};
  for (int i = 0; i < 2000; ++i) {
    const Trapezoid a = g.trapezoid(i % 2 == 0);
    const Trapezoid b = g.trapezoid(i % 3 == 0);
    const double ab = possibility(a, b).value();
    CHECK(ab == possibility(b, a).value());
    CHECK(ab >= 0.0);
    CHECK(ab <= 1.0);
    CHECK(possibility(a, a).value() == 1.0);
    CHECK(ab == oracle::closed_possibility(trap(a), trap(b)));
    const double x = g.real(-250, 450);
    CHECK(possibility(Trapezoid::point(x), a).value() == trapezoid_membership(a, x).value());
  }
}

TEST_CASE("possibility against the grid oracle") {
  testsupport::Gen g{11};
  for (int i = 0; i < 200; ++i) {
    const Trapezoid a = g.trapezoid(false, 0, 100);
    const Trapezoid b = g.trapezoid(false, 0, 100);
    // Grid step 100/2e4; ramps are at least as shallow as the sampled range allows.
    const double grid = oracle::grid_possibility(trap(a), trap(b), 20001);
    const double exact = possibility(a, b).value();
    CHECK(grid <= exact + 1e-12);
    if (a.beta() - a.alpha() > 1 && a.delta() - a.gamma() > 1 && b.beta() - b.alpha() > 1 &&
        b.delta() - b.gamma() > 1) {
      CHECK(exact - grid <= 1e-2);
    }
  }
}

TEST_CASE("to_trapezoid conversions") {
  CHECK(to_trapezoid(FuzzyValue2::crisp(400), {}) == Trapezoid{400, 400, 400, 400});
  CHECK(to_trapezoid(FuzzyValue2::interval(3, 7), {}) == Trapezoid{3, 3, 7, 7});
  CHECK(to_trapezoid(FuzzyValue2::approx(8, 1), {}) == Trapezoid{7, 8, 8, 9});
  CHECK(to_trapezoid(FuzzyValue2::label("Normal"), diametro()) == kNormal);
  CHECK_FALSE(to_trapezoid(FuzzyValue2::unknown(), {}).has_value());
  CHECK_FALSE(to_trapezoid(FuzzyValue2::null(), {}).has_value());
}

TEST_CASE("value factories reject malformed values") {
  CHECK_THROWS_AS(FuzzyValue2::interval(5, 3), Error);
  CHECK_THROWS_AS(FuzzyValue2::approx(5, -1), Error);
  CHECK_THROWS_AS(FuzzyValue2::label(""), Error);
  CHECK_THROWS_AS(PossPair(0.0, "Sucio"), Error);
  CHECK_THROWS_AS(PossPair(1.2, "Sucio"), Error);
  CHECK_THROWS_AS(FuzzyValue3::distribution({}), Error);
  CHECK_THROWS_AS(FuzzyValue3::distribution({{0.5, "Sucio"}, {1, "Sucio"}}), Error);
  CHECK(FuzzyValue2::crisp(1).tag() == 3);
  CHECK(FuzzyValue2::trapezoid(kNormal).tag() == 7);
  CHECK(FuzzyValue3::distribution({{0.5, "Sucio"}}).tag() == 4);
}

TEST_CASE("feq_type2") {
  const auto r = diametro();
  CHECK(feq_type2(FuzzyValue2::crisp(160), FuzzyValue2::label("Normal"), r).value() == 1.0);
  CHECK(feq_type2(FuzzyValue2::crisp(402), FuzzyValue2::label("Normal"), r).value() == 0.0);
  CHECK(feq_type2(FuzzyValue2::label("Rango_min"), FuzzyValue2::label("Normal"), r).value() ==
        doctest::Approx(0.375));
  CHECK(feq_type2(FuzzyValue2::unknown(), FuzzyValue2::crisp(3), r).value() == 1.0);
  CHECK(feq_type2(FuzzyValue2::undefined(), FuzzyValue2::crisp(3), r).value() == 0.0);
  CHECK(feq_type2(FuzzyValue2::null(), FuzzyValue2::unknown(), r).value() == 0.0);
  CHECK(feq_type2(FuzzyValue2::unknown(), FuzzyValue2::undefined(), r).value() == 0.0);
  CHECK(feq_type2(FuzzyValue2::unknown(), FuzzyValue2::unknown(), r).value() == 1.0);
  CHECK_THROWS_AS(feq_type2(FuzzyValue2::label("Enorme"), FuzzyValue2::crisp(1), r), Error);
}

TEST_CASE("similarity relation") {
  const auto s = estado();
  CHECK(s.degree(0, 5).value() == 0.3);
  CHECK(s.degree(5, 0).value() == 0.3);
  CHECK(s.degree(3, 3).value() == 1.0);
  CHECK(s.degree(2, 3).value() == 0.0);
  CHECK(s.degree("Curvas", "Englobado").value() == 0.3);
  CHECK_THROWS_AS(s.degree(0, 42), Error);

  std::map<int, std::string> two{{0, "A"}, {1, "B"}};
  CHECK_THROWS_AS((SimilarityRelation{two, {{{0, 0}, 0.5}}}), Error);
  CHECK_THROWS_AS((SimilarityRelation{two, {{{0, 2}, 0.5}}}), Error);
  CHECK_THROWS_AS((SimilarityRelation{two, {{{0, 1}, 1.5}}}), Error);
  CHECK_THROWS_AS((SimilarityRelation{two, {{{0, 1}, 0.5}, {{1, 0}, 0.4}}}), Error);
  CHECK_NOTHROW(SimilarityRelation{two, {{{0, 1}, 0.5}, {{1, 0}, 0.5}}});
}

TEST_CASE("feq_type3") {
  const auto s = estado();
  const auto curvas = FuzzyValue3::simple({1, "Curvas"});
  const auto englobado = FuzzyValue3::simple({1, "Englobado"});
  CHECK(feq_type3(curvas, englobado, s).value() == 0.3);
  CHECK(feq_type3(englobado, curvas, s).value() == 0.3);
  const auto mixed = FuzzyValue3::distribution({{0.5, "Englobado"}, {1, "Sucio"}});
  CHECK(feq_type3(mixed, FuzzyValue3::simple({1, "Sucio"}), s).value() == 1.0);
  CHECK(feq_type3(mixed, curvas, s).value() == 0.3);
  CHECK(feq_type3(mixed, FuzzyValue3::simple({1, "Orilla_crespa"}), s).value() == 0.5);
  CHECK(feq_type3(FuzzyValue3::undefined(), curvas, s).value() == 0.0);
  CHECK(feq_type3(FuzzyValue3::unknown(), curvas, s).value() == 1.0);
  CHECK_THROWS_AS(feq_type3(FuzzyValue3::simple({1, "Roto"}), curvas, s), Error);

  testsupport::Gen g{3};
  std::vector<std::string> names;
  for (const auto& [id, n] : s.labels()) names.push_back(n);
  for (int i = 0; i < 500; ++i) {
    const auto a = g.value3(names, 9);
    const auto b = g.value3(names, 9);
    CHECK(feq_type3(a, b, s) == feq_type3(b, a, s));
    if (!a.is_special()) {
      bool all_one = true;
      for (const auto& p : a.pairs()) all_one = all_one && p.possibility() == 1.0;
      if (all_one) CHECK(feq_type3(a, a, s).value() == 1.0);
    }
  }
}
