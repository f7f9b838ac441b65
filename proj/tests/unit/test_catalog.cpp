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

#include <algorithm>

#include "fuzzydb/catalog.hpp"
#include "fuzzydb/encoding.hpp"
#include "fuzzydb/error.hpp"
#include "support/expect.hpp"
#include "support/generators.hpp"

using namespace fuzzydb;
using testsupport::code_of;

namespace {

Catalog diametro_catalog() {
  Catalog c;
  c.register_column({"Rollos", "Diametro", 2, 1});
  c.register_column({"Rollos", "Estado", 3, 9});
  c.define_label({"Rollos", "Diametro", 0, "Rango_min", 0});
  c.define_label({"Rollos", "Diametro", 1, "Normal", 0});
  c.define_label({"Rollos", "Estado", 0, "Englobado", 1});
  c.define_label({"Rollos", "Estado", 5, "Curvas", 1});
  return c;
}

bool has_kind(const std::vector<Violation>& vs, std::string_view kind) {
  return std::any_of(vs.begin(), vs.end(), [&](const Violation& v) { return v.kind == kind; });
}

}  // namespace

TEST_CASE("catalog population order") {
  Catalog c;
  CHECK(code_of([&] { c.define_label({"Rollos", "Diametro", 0, "Rango_min", 0}); }) == ErrorCode::NoSuchColumn);
  CHECK(code_of([&] { c.define_trapezoid({"Rollos", "Diametro", 0, 50, 70, 100, 130}); }) == ErrorCode::NoSuchLabel);
  c.register_column({"Rollos", "Diametro", 2, 1});
  CHECK(c.state("Rollos", "Diametro") == PopulationState::ColumnDeclared);
  CHECK(code_of([&] { c.define_trapezoid({"Rollos", "Diametro", 0, 50, 70, 100, 130}); }) == ErrorCode::NoSuchLabel);
  c.define_label({"Rollos", "Diametro", 0, "Rango_min", 0});
  CHECK(c.state("Rollos", "Diametro") == PopulationState::AwaitingTrapezoids);
  CHECK_FALSE(c.is_valid());
  c.define_trapezoid({"Rollos", "Diametro", 0, 50, 70, 100, 130});
  CHECK(c.state("Rollos", "Diametro") == PopulationState::Complete);
  CHECK(c.is_valid());
  CHECK(c.trapezoid_of_label("Rollos", "Diametro", "Rango_min") == Trapezoid{50, 70, 100, 130});
}

TEST_CASE("catalog guardrails") {
  Catalog c = diametro_catalog();
  CHECK(code_of([&] { c.register_column({"Rollos", "Diametro", 2, 1}); }) == ErrorCode::DuplicateColumn);
  CHECK(code_of([&] { c.register_column({"Rollos", "Altura", 2, 0}); }) == ErrorCode::BadLen);
  CHECK(code_of([&] { c.register_column({"Rollos", "Altura", 2, 3}); }) == ErrorCode::BadLen);
  CHECK(code_of([&] { c.register_column({"Rollos", "Color", 3, 0}); }) == ErrorCode::BadLen);
  CHECK(code_of([&] { c.register_column({"Rollos", "Altura", 4, 1}); }) == ErrorCode::InvalidValue);
  CHECK(code_of([&] { c.register_column({"Rollos", "Mal nombre", 2, 1}); }) == ErrorCode::InvalidValue);
  CHECK(code_of([&] { c.define_label({"Rollos", "Diametro", 2, "Rango_max", 1}); }) == ErrorCode::TypeMismatch);
  CHECK(code_of([&] { c.define_label({"Rollos", "Estado", 1, "Deslaminado", 0}); }) == ErrorCode::TypeMismatch);
  CHECK(code_of([&] { c.define_label({"Rollos", "Diametro", 1, "Otro", 0}); }) == ErrorCode::DuplicateLabelId);
  CHECK(code_of([&] { c.define_label({"Rollos", "Diametro", 2, "Normal", 0}); }) == ErrorCode::DuplicateLabelName);
  CHECK(code_of([&] { c.define_trapezoid({"Rollos", "Diametro", 0, 70, 50, 100, 130}); }) == ErrorCode::BadShape);
  CHECK(code_of([&] { c.define_trapezoid({"Rollos", "Estado", 0, 1, 2, 3, 4}); }) == ErrorCode::NotTrapezoidalLabel);
  c.define_trapezoid({"Rollos", "Diametro", 0, 50, 70, 100, 130});
  CHECK(code_of([&] { c.define_trapezoid({"Rollos", "Diametro", 0, 50, 70, 100, 130}); }) == ErrorCode::DuplicateTrapezoid);
  CHECK(code_of([&] { c.define_similarity({"Rollos", "Estado", 0, 5, 1.5}); }) == ErrorCode::DegreeOutOfRange);
  CHECK(code_of([&] { c.define_similarity({"Rollos", "Estado", 0, 5, -0.1}); }) == ErrorCode::DegreeOutOfRange);
  CHECK(code_of([&] { c.define_similarity({"Rollos", "Estado", 5, 5, 0.5}); }) == ErrorCode::SelfPair);
  CHECK(code_of([&] { c.define_similarity({"Rollos", "Estado", 0, 7, 0.5}); }) == ErrorCode::NoSuchLabel);
  CHECK(code_of([&] { c.define_similarity({"Rollos", "Diametro", 0, 1, 0.5}); }) == ErrorCode::TypeMismatch);
  c.define_similarity({"Rollos", "Estado", 0, 5, 0.3});
  CHECK_NOTHROW(c.define_similarity({"Rollos", "Estado", 5, 0, 0.3}));
  CHECK(code_of([&] { c.define_similarity({"Rollos", "Estado", 5, 0, 0.4}); }) == ErrorCode::ConflictingDegree);
  CHECK(c.similarity_relation_of_column("Rollos", "Estado").degree(5, 0).value() == 0.3);
}

TEST_CASE("catalog validation reports") {
  Catalog c = diametro_catalog();
  const auto vs = c.validate();
  CHECK(has_kind(vs, "MissingTrapezoid"));
  CHECK(has_kind(vs, "LabelIdGap"));  // Estado ids 0 and 5
  c.define_trapezoid({"Rollos", "Diametro", 0, 50, 70, 100, 130});
  c.define_trapezoid({"Rollos", "Diametro", 1, 100, 150, 170, 220});
  CHECK(c.is_valid());  // the gap is only a warning
}

TEST_CASE("catalog file order does not matter") {
  const std::string text =
      "[FND]\nRollos Estado 0 1 0.4\n"
      "[FLD]\nRollos Diametro 0 1 2 3 4\n"
      "[FOL]\nRollos Diametro 0 'Bajo' 0\nRollos Estado 0 'A' 1\nRollos Estado 1 'B' 1\n"
      "[FCL]\nRollos Diametro 2 1\nRollos Estado 3 2\n";
  const auto r = load_catalog_text(text);
  CHECK(r.ok());
  CHECK(r.violations.empty());
  CHECK(r.document.catalog.fnd_rows().size() == 1);
}

TEST_CASE("catalog file violations carry line numbers") {
  const std::string text =
      "[FCL]\nRollos Diametro 2 1\nRollos Altura 2 0\n"
      "[FOL]\nRollos Diametro 0 'Bajo' 1\n"
      "[FLD]\nRollos Peso 0 1 2 3 4\n";
  const auto r = load_catalog_text(text);
  CHECK_FALSE(r.ok());
  REQUIRE(r.violations.size() >= 3);
  CHECK(r.violations[0].kind == "BadLen");
  CHECK(r.violations[0].line == 3);
  CHECK(r.violations[1].kind == "TypeMismatch");
  CHECK(r.violations[1].line == 5);
  CHECK(r.violations[2].kind == "NoSuchLabel");
  CHECK(r.violations[2].line == 7);
}

TEST_CASE("catalog syntax errors") {
  CHECK_THROWS_AS(load_catalog_text("[FCL]\nRollos Diametro dos 1\n"), SyntaxError);
  CHECK_THROWS_AS(load_catalog_text("Rollos Diametro 2 1\n"), SyntaxError);
  CHECK_THROWS_AS(load_catalog_text("[XYZ]\n"), SyntaxError);
  CHECK_THROWS_AS(load_catalog_text("[FOL]\nRollos Diametro 0 'Bajo\n"), SyntaxError);
}

TEST_CASE("case-study catalog") {
  const auto doc = testsupport::case_study();
  const auto& c = doc.catalog;
  CHECK(c.is_valid());
  CHECK(c.fcl_rows().size() == 12);
  CHECK(c.column_meta("Pilas", "Estado").len == 9);
  CHECK(c.column_meta("Cartulinas", "Impresion").f_type == 1);
  CHECK(c.column_meta("Cartulinas", "Tono_cara").f_type == 3);
  CHECK(c.trapezoid_of_label("Rollos", "Diametro", "Normal") == Trapezoid{100, 150, 170, 220});
  const auto s = c.similarity_relation_of_column("Rollos", "Estado");
  CHECK(s.degree("Englobado", "Curvas").value() == 0.3);
  CHECK(s.degree("Deslaminado", "Disparejo").value() == 0.1);

  // Definition text reproduces the same document.
  const auto again = load_catalog_text(write_catalog_definition(doc));
  CHECK(again.ok());
  CHECK(again.document == doc);
}

TEST_CASE("loader script round trip") {
  const auto doc = testsupport::case_study();
  const std::string script = emit_loader_script(doc);
  CHECK(script.find("INSERT into FCL values (t_PILAS,c_PLARGO,2,1,USER||'.Pilas.largo');") != std::string::npos);
  CHECK(script.find("INSERT into FOL values(t_ROLLOS,c_RDIAMETRO,1,'NORMA',0);") != std::string::npos);
  CHECK(script.find("INSERT into FND values(t_ROLLOS,c_RESTADO,0,5,.3);") != std::string::npos);
  const auto back = load_catalog_text(script);
  CHECK(back.ok());
  CHECK(back.document == doc);
  CHECK(emit_loader_script(Catalog{}).empty());
}

TEST_CASE("bare published script statements load") {
  // Without the name header, names come from the USER path and the label text.
  const std::string script =
      "INSERT into FCL values (t_ROLLOS,c_RESTADO,3,9,USER||'.Rollos.Estado');\n"
      "INSERT into FOL values(t_ROLLOS,c_RESTADO,0,'ENGLOBADO',1);\n"
      "INSERT into FOL values(t_ROLLOS,c_RESTADO,5,'CURVAS',1);\n"
      "INSERT into FND values(t_ROLLOS,c_RESTADO,0,5,.3);\n";
  const auto r = load_catalog_text(script);
  CHECK(r.ok());
  const auto s = r.document.catalog.similarity_relation_of_column("Rollos", "Estado");
  CHECK(s.degree("ENGLOBADO", "CURVAS").value() == 0.3);
}

TEST_CASE("table dump") {
  const auto dump = dump_catalog_tables(testsupport::case_study().catalog);
  CHECK(dump.find("OBJ# | COL# | F_TYPE | LEN\n") != std::string::npos);
  CHECK(dump.find("Pilas | Estado | 3 | 9\n") != std::string::npos);
  CHECK(dump.find("Rollos | Diametro | 1 | 'Normal' | 0\n") != std::string::npos);
  CHECK(dump.find("Rollos | Altura | 2 | 10 | 12 | 15 | 17\n") != std::string::npos);
  CHECK(dump.find("Rollos | Altura | 3 |") == std::string::npos);
  CHECK(dump.find("Rollos | Estado | 1 | 8 | 0.1\n") != std::string::npos);
}

TEST_CASE("identifier derivation") {
  CHECK(table_identifier("Pilas") == "t_PILAS");
  CHECK(column_identifier("Pilas", "Largo") == "c_PLARGO");
  CHECK(column_identifier("Rollos", "Estado") == "c_RESTADO");
}
