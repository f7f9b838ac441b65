#!/usr/bin/env python3
# Copyright 2026 the fuzzydb authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""End-to-end checks of the fuzzydb command-line tool.

usage: test_cli.py FUZZYDB_BINARY FIXTURE_DIR
"""

import hashlib
import json
import os
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path

BINARY = ""
FIXTURES = Path()


def run(*args, db=None):
    cmd = [BINARY]
    if db is not None:
        cmd += ["--db", str(db)]
    cmd += [str(a) for a in args]
    env = {k: v for k, v in os.environ.items() if k != "FUZZYDB_DIR"}
    return subprocess.run(cmd, capture_output=True, text=True, env=env)


def snapshot(root):
    out = {}
    for p in sorted(Path(root).rglob("*")):
        if p.is_file():
            out[str(p.relative_to(root))] = hashlib.sha256(p.read_bytes()).hexdigest()
    return out


class CliTest(unittest.TestCase):
    def setUp(self):
        self.tmp = tempfile.TemporaryDirectory()
        self.db = Path(self.tmp.name) / "db"

    def tearDown(self):
        self.tmp.cleanup()

    def write(self, name, text):
        p = Path(self.tmp.name) / name
        p.write_text(text)
        return p

    def loaded(self):
        self.assertEqual(run("init", self.db).returncode, 0)
        r = run("load-catalog", FIXTURES / "case_study.fcat", db=self.db)
        self.assertEqual(r.returncode, 0, r.stderr)
        r = run("load-data", FIXTURES / "rollos.fdat", db=self.db)
        self.assertEqual(r.returncode, 0, r.stderr)

    def test_init_twice(self):
        self.assertEqual(run("init", self.db).returncode, 0)
        self.assertTrue((self.db / "MANIFEST").is_file())
        self.assertEqual(run("init", self.db).returncode, 2)

    def test_no_database_given(self):
        self.assertEqual(run("dump-catalog").returncode, 2)
        self.assertEqual(run("query", "SELECT * FROM Rollos", db=self.db).returncode, 2)

    def test_env_var_names_database(self):
        self.assertEqual(run("init", self.db).returncode, 0)
        env = dict(os.environ, FUZZYDB_DIR=str(self.db))
        r = subprocess.run([BINARY, "load-catalog", str(FIXTURES / "case_study.fcat")],
                           capture_output=True, text=True, env=env)
        self.assertEqual(r.returncode, 0, r.stderr)

    def test_before_catalog(self):
        self.assertEqual(run("init", self.db).returncode, 0)
        self.assertEqual(run("dump-catalog", db=self.db).returncode, 1)
        self.assertEqual(run("query", "SELECT * FROM Rollos", db=self.db).returncode, 1)
        self.assertEqual(run("load-data", FIXTURES / "rollos.fdat", db=self.db).returncode, 1)

    def test_dump_formats(self):
        self.loaded()
        table = run("dump-catalog", db=self.db)
        self.assertEqual(table.returncode, 0)
        self.assertIn("Pilas | Estado | 3 | 9\n", table.stdout)
        self.assertIn("Rollos | Diametro | 0 | 50 | 70 | 100 | 130\n", table.stdout)
        script = run("dump-catalog", "--format", "script", db=self.db)
        self.assertEqual(script.returncode, 0)
        self.assertIn("INSERT into FND values(t_ROLLOS,c_RESTADO,0,5,.3);", script.stdout)

    def test_script_round_trip(self):
        self.loaded()
        script = self.write("dump.sql", run("dump-catalog", "--format", "script", db=self.db).stdout)
        other = Path(self.tmp.name) / "other"
        self.assertEqual(run("init", other).returncode, 0)
        r = run("load-catalog", script, db=other)
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertEqual(run("dump-catalog", db=other).stdout, run("dump-catalog", db=self.db).stdout)
        self.assertEqual(run("dump-catalog", "--format", "script", db=other).stdout, script.read_text())

    def test_query_output(self):
        self.loaded()
        q = "SELECT Codigo_rollo, CDEG(*) FROM Rollos WHERE Estado FEQ $Englobado THOLD 0.2"
        r = run("query", q, db=self.db)
        self.assertEqual(r.returncode, 0, r.stderr)
        line = next(l for l in r.stdout.splitlines() if l.startswith("R05"))
        self.assertTrue(line.endswith("0.300000"), line)
        j = run("query", q, "--format", "json", db=self.db)
        doc = json.loads(j.stdout)
        self.assertEqual(doc["columns"], ["Codigo_rollo", "CDEG(*)"])
        self.assertIn(["R05", 0.3], doc["rows"])

    def test_query_errors(self):
        self.loaded()
        r = run("query", "SELECT FROM", db=self.db)
        self.assertEqual(r.returncode, 1)
        self.assertIn("^", r.stderr)
        self.assertEqual(run("query", "SELECT * FROM Nada", db=self.db).returncode, 1)
        self.assertEqual(run("query", "SELECT * FROM Rollos WHERE Estado FEQ 4", db=self.db).returncode, 1)
        self.assertEqual(run("query", "SELECT * FROM Rollos", "--format", "xml", db=self.db).returncode, 2)

    def test_failed_loads_leave_directory_untouched(self):
        self.loaded()
        before = snapshot(self.db)
        bad_rows = self.write("bad.fdat", "#fuzzydb-data v1\ntable Pilas\ncolumn Codigo_pila crisp-text key\n"
                                          "column Estado type3 Pilas.Estado\nrow 'P1', $Roto\n")
        r = run("load-data", bad_rows, db=self.db)
        self.assertEqual(r.returncode, 1)
        self.assertIn("line 5 field 2: UnknownLabel", r.stderr)
        bad_syntax = self.write("syntax.fdat", "#fuzzydb-data v1\ntable Pilas\n"
                                             "column Codigo_pila crisp-text key\nrow 'P1\n")
        self.assertEqual(run("load-data", bad_syntax, db=self.db).returncode, 2)
        self.assertEqual(run("load-data", FIXTURES / "rollos.fdat", db=self.db).returncode, 1)
        self.assertEqual(run("load-data", FIXTURES / "pilas.fdat", "--table", "Rollos", db=self.db).returncode, 1)
        other = self.write("other.fcat", "[FCL]\nRollos Diametro 2 1\n")
        self.assertEqual(run("load-catalog", other, db=self.db).returncode, 1)
        self.assertEqual(run("load-data", Path(self.tmp.name) / "missing.fdat", db=self.db).returncode, 2)
        self.assertEqual(snapshot(self.db), before)
        self.assertEqual(run("load-data", FIXTURES / "rollos.fdat", "--replace", db=self.db).returncode, 0)

    def test_catalog_rows_in_any_order(self):
        self.assertEqual(run("init", self.db).returncode, 0)
        text = ("[FLD]\nRollos Diametro 0 50 70 100 130\n"
                "[FOL]\nRollos Diametro 0 'Rango_min' 0\n"
                "[FCL]\nRollos Diametro 2 1\n")
        r = run("load-catalog", self.write("order.fcat", text), db=self.db)
        self.assertEqual(r.returncode, 0, r.stderr)

    def test_catalog_violations(self):
        orphan = self.write("orphan.fcat", "[FCL]\nRollos Diametro 2 1\n[FLD]\nRollos Diametro 0 1 2 3 4\n")
        r = run("validate", orphan)
        self.assertEqual(r.returncode, 1)
        self.assertIn("NoSuchLabel", r.stderr)
        self.assertEqual(run("validate", self.write("junk.fcat", "[FCL]\nRollos\n")).returncode, 2)
        self.assertEqual(run("validate", Path(self.tmp.name) / "none.fcat").returncode, 2)
        ok = run("validate", FIXTURES / "case_study.fcat")
        self.assertEqual((ok.returncode, ok.stdout), (0, "ok\n"))

    def test_validate_database(self):
        self.loaded()
        r = run("validate", db=self.db)
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertTrue(r.stdout.startswith("ok: 12 columns, 1 tables"), r.stdout)


if __name__ == "__main__":
    BINARY, FIXTURES = sys.argv[1], Path(sys.argv[2])
    unittest.main(argv=sys.argv[:1], verbosity=2)
