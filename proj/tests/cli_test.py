"""End-to-end checks of the cohesion-lab binary.

usage: cli_test.py BINARY DATA_DIR SCHEMA_DIR
"""

import json
import os
import subprocess
import sys
import tempfile
import unittest
from pathlib import Path

import jsonschema

BIN, DATA, SCHEMAS = sys.argv[1], Path(sys.argv[2]), Path(sys.argv[3])


def run(*args, env=None):
    full_env = dict(os.environ)
    full_env.pop("COHESION_LAB_WORKERS", None)
    full_env.update(env or {})
    return subprocess.run([BIN, *map(str, args)], capture_output=True, text=True, env=full_env)


def payload(proc, schema=None):
    doc = json.loads(proc.stdout)
    if schema:
        with open(SCHEMAS / f"{schema}.schema.json") as f:
            jsonschema.validate(doc, json.load(f))
    return doc


class Cohesion(unittest.TestCase):
    def test_figure1_square(self):
        p = run("cohesion", "--graph", DATA / "figure1.edges", "--set", "a,b,c,d")
        self.assertEqual(p.returncode, 0, p.stderr)
        doc = payload(p, "cohesion")
        self.assertEqual((doc["inside"], doc["outbound"]), ("2", "1"))
        self.assertEqual((doc["cohesion"]["num"], doc["cohesion"]["den"]), ("1", "3"))

    def test_k5_whole(self):
        doc = payload(run("cohesion", "--graph", DATA / "k5.edges", "--set", "1,2,3,4,5"), "cohesion")
        self.assertEqual((doc["cohesion"]["num"], doc["cohesion"]["den"]), ("1", "1"))

    def test_two_vertices(self):
        doc = payload(run("cohesion", "--graph", DATA / "k5.edges", "--set", "1,2"), "cohesion")
        self.assertEqual((doc["cohesion"]["num"], doc["cohesion"]["den"]), ("0", "1"))

    def test_unknown_token(self):
        p = run("cohesion", "--graph", DATA / "k5.edges", "--set", "1,zz")
        self.assertEqual(p.returncode, 3)
        self.assertEqual(p.stdout, "")
        self.assertIn("zz", p.stderr)

    def test_missing_file_and_bad_input(self):
        self.assertEqual(run("cohesion", "--graph", "/nonexistent", "--set", "1").returncode, 3)
        with tempfile.NamedTemporaryFile("w", suffix=".edges", delete=False) as f:
            f.write("1 2\n2 2\n")
        try:
            p = run("cohesion", "--graph", f.name, "--set", "1")
            self.assertEqual(p.returncode, 3)
            self.assertIn("line 2", p.stderr)
        finally:
            os.unlink(f.name)

    def test_human_output(self):
        p = run("cohesion", "--graph", DATA / "figure1.edges", "--set", "a,b,c,d", "--human")
        self.assertEqual(p.returncode, 0)
        self.assertIn("1/3", p.stdout)


class Solve(unittest.TestCase):
    def test_k5_exact(self):
        doc = payload(run("solve", "--graph", DATA / "k5.edges"), "solve")
        self.assertEqual(doc["best_set"], ["1", "2", "3", "4", "5"])
        self.assertEqual(doc["value"]["num"], doc["value"]["den"])

    def test_bridged_heuristic(self):
        doc = payload(run("solve", "--graph", DATA / "two_k5_bridged.edges", "--mode", "heuristic"), "solve")
        self.assertIn(doc["best_set"], (["a1", "a2", "a3", "a4", "a5"], ["b1", "b2", "b3", "b4", "b5"]))
        self.assertEqual(doc["value"]["num"], "1")

    def test_c6_exact(self):
        doc = payload(run("solve", "--graph", DATA / "c6.edges"), "solve")
        self.assertTrue(doc["no_positive_cohesion"])
        self.assertEqual(doc["value"]["num"], "0")

    def test_guard_refusal(self):
        with tempfile.NamedTemporaryFile("w", suffix=".edges", delete=False) as f:
            for v in range(40):
                f.write(f"{v} {v + 1}\n")
        try:
            p = run("solve", "--graph", f.name)
            self.assertEqual(p.returncode, 2)
            self.assertIn("guard", p.stderr)
            self.assertEqual(run("solve", "--graph", f.name, "--force").returncode, 0)
        finally:
            os.unlink(f.name)

    def test_bad_mode(self):
        self.assertEqual(run("solve", "--graph", DATA / "k5.edges", "--mode", "magic").returncode, 2)

    def test_deterministic(self):
        for mode in ("exact", "heuristic"):
            a = run("solve", "--graph", DATA / "figure1.edges", "--mode", mode, "--rng-seed", "5")
            b = run("solve", "--graph", DATA / "figure1.edges", "--mode", mode, "--rng-seed", "5",
                    env={"COHESION_LAB_WORKERS": "3"})
            self.assertEqual(a.stdout, b.stdout)


class Reduce(unittest.TestCase):
    def test_k4_minus_edge_default(self):
        doc = payload(run("reduce", "--graph", DATA / "k4_minus_edge.edges", "--k", "3"), "reduction")
        self.assertEqual(doc["transformed_vertices"], "516")
        self.assertEqual(doc["gadget_size"], "512")
        self.assertEqual((doc["lambda"]["num"], doc["lambda"]["den"]), ("1", "4"))
        self.assertTrue(doc["materialized"])

    def test_k4_unchanged(self):
        with tempfile.NamedTemporaryFile("w", suffix=".edges", delete=False) as f:
            f.write("1 2\n1 3\n1 4\n2 3\n2 4\n3 4\n")
        try:
            doc = payload(run("reduce", "--graph", f.name, "--k", "4"), "reduction")
            self.assertEqual(doc["non_edges"], [])
            self.assertEqual(doc["transformed_vertices"], "4")
            self.assertEqual(doc["lambda"]["num"], doc["lambda"]["den"])
        finally:
            os.unlink(f.name)

    def test_c5_gadget_six(self):
        doc = payload(run("reduce", "--graph", DATA / "c5.edges", "--k", "3", "--gadget", "6"), "reduction")
        self.assertEqual(doc["transformed_vertices"], "35")
        self.assertTrue(doc["materialized"])

    def test_disconnected(self):
        p = run("reduce", "--graph", DATA / "two_triangles.edges", "--k", "3")
        self.assertEqual(p.returncode, 3)
        self.assertIn("{x1,x2,x3}", p.stderr)

    def test_component_selection(self):
        with tempfile.NamedTemporaryFile("w", suffix=".edges", delete=False) as f:
            f.write("1 2\n1 3\n1 4\n2 3\n2 4\nx y\n")
        try:
            self.assertEqual(run("reduce", "--graph", f.name, "--k", "3").returncode, 3)
            doc = payload(run("reduce", "--graph", f.name, "--k", "3", "--component", "0",
                              "--gadget", "2"), "reduction")
            self.assertEqual(doc["n"], 4)
            self.assertEqual(doc["transformed_vertices"], "6")
        finally:
            os.unlink(f.name)

    def test_round_trip_through_cohesion(self):
        with tempfile.TemporaryDirectory() as d:
            out, edges = Path(d) / "inst.json", Path(d) / "t.edges"
            p = run("reduce", "--graph", DATA / "k4_minus_edge.edges", "--k", "3", "--gadget", "8",
                    "--out", out, "--edges", edges)
            self.assertEqual(p.returncode, 0, p.stderr)
            inst = json.loads(out.read_text())
            with open(SCHEMAS / "reduction.schema.json") as f:
                jsonschema.validate(inst, json.load(f))
            doc = payload(run("cohesion", "--graph", edges, "--set", "1,2,3"), "cohesion")
            self.assertEqual(doc["cohesion"]["num"], inst["lambda"]["num"])
            self.assertEqual(doc["cohesion"]["den"], inst["lambda"]["den"])

    def test_virtual_stats(self):
        doc = payload(run("stats", "--graph", DATA / "c5.edges", "--k", "3"), "stats")
        self.assertFalse(doc["reduction"]["materialized"])
        self.assertEqual(doc["reduction"]["gadget_size"], "20000")
        self.assertEqual(doc["triangles"], 0)


class Verify(unittest.TestCase):
    def test_lemma_and_theorem(self):
        p = run("verify", "--suite", "lemma1,theorem1", "--trials", "200")
        self.assertEqual(p.returncode, 0, p.stderr)
        doc = payload(p, "verify")
        self.assertEqual([r["property"] for r in doc], ["lemma1", "theorem1"])
        self.assertTrue(all(r["passed"] for r in doc))

    def test_census_oracle(self):
        p = run("verify", "--suite", "census_oracle", "--trials", "1000")
        self.assertEqual(p.returncode, 0, p.stderr)
        payload(p, "verify")

    def test_unknown_suite(self):
        p = run("verify", "--suite", "nosuchsuite")
        self.assertEqual(p.returncode, 2)
        self.assertEqual(p.stdout, "")

    def test_deterministic(self):
        args = ("verify", "--suite", "lemma1,theorem3_forward", "--trials", "40", "--rng-seed", "17")
        a = run(*args)
        b = run(*args, "--workers", "4")
        self.assertEqual(a.stdout, b.stdout)


class Usage(unittest.TestCase):
    def test_no_subcommand(self):
        self.assertEqual(run().returncode, 2)

    def test_help(self):
        self.assertEqual(run("--help").returncode, 0)

    def test_missing_graph(self):
        self.assertEqual(run("cohesion", "--set", "1").returncode, 2)


if __name__ == "__main__":
    unittest.main(argv=[sys.argv[0]], verbosity=2)
