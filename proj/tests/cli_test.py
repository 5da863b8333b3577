#!/usr/bin/env python3
"""End-to-end checks of the orl command line tool."""

import json
import os
import subprocess
import sys
import tempfile
import unittest

import jsonschema

ORL, DATA, SCHEMA = sys.argv[1:4]
del sys.argv[1:4]


def data(name):
    return os.path.join(DATA, name)


def orl(*args):
    return subprocess.run([ORL, *args], capture_output=True, text=True, timeout=300)


def learn(task, *extra):
    return orl("learn", "--kb", data("example1.okb"), "--examples", data(task + ".oex"),
               "--bias", data(task + ".obias"), *extra)


class Learn(unittest.TestCase):
    def test_tasks(self):
        for task, rule in [("loner", "LONER(X) :- famous(X), UNMARRIED(X)."),
                           ("likes", "LIKES(X,Y) :- meets(X,Z,Y), RICH(Z).")]:
            r = learn(task)
            self.assertEqual(r.returncode, 0, r.stderr)
            self.assertIn(rule, r.stdout.splitlines())

    def test_json_matches_schema_and_text(self):
        with open(SCHEMA) as f:
            schema = json.load(f)
        for task in ("loner", "likes"):
            text = learn(task)
            js = learn(task, "--format", "json", "--timings")
            self.assertEqual(js.returncode, 0, js.stderr)
            report = json.loads(js.stdout)
            jsonschema.validate(report, schema)
            text_rules = [l for l in text.stdout.splitlines() if ":-" in l and l.endswith(".")]
            self.assertEqual(text_rules, [r["rule"] for r in report["rules"]])
            self.assertIn("learn", report["timings_ms"])

    def test_out_file(self):
        with tempfile.TemporaryDirectory() as d:
            path = os.path.join(d, "h.json")
            r = learn("loner", "--format", "json", "--out", path)
            self.assertEqual(r.returncode, 0, r.stderr)
            with open(path) as f:
                self.assertEqual(json.load(f)["status"], "complete")

    def test_partial_result(self):
        r = learn("loner", "--max-body-len", "1", "--format", "json")
        self.assertEqual(r.returncode, 2)
        report = json.loads(r.stdout)
        self.assertEqual(report["status"], "partial")
        self.assertEqual(len(report["uncovered_positives"]), 2)

    def test_malformed_kb(self):
        with tempfile.TemporaryDirectory() as d:
            bad = os.path.join(d, "bad.okb")
            with open(bad, "w") as f:
                f.write("pred p/1.\n#facts\np(a) q(b).\n")
            r = orl("learn", "--kb", bad, "--examples", data("loner.oex"), "--bias", data("loner.obias"))
            self.assertEqual(r.returncode, 1)
            self.assertIn(bad + ":3:", r.stderr)

    def test_missing_option(self):
        self.assertEqual(orl("learn", "--kb", data("example1.okb")).returncode, 1)


class Check(unittest.TestCase):
    def check(self, rule, example, *extra):
        return orl("check", "--kb", data("example1.okb"), "--rule", rule, "--example", example, *extra)

    def test_verdicts(self):
        r = self.check("LONER(X) :- famous(X), UNMARRIED(X).", "LONER(Mary)")
        self.assertEqual((r.returncode, r.stdout.strip()), (0, "covers"))
        r = self.check("LONER(X) :- famous(X), UNMARRIED(X).", "LONER(Paul)")
        self.assertEqual((r.returncode, r.stdout.strip()), (0, "does-not-cover"))
        r = self.check("LIKES(X,Y) :- meets(X,Z,Y), happy(X).", "LIKES(Mary,Italy)", "--dl-safe")
        self.assertEqual(r.stdout.strip(), "does-not-cover")

    def test_errors(self):
        self.assertEqual(self.check("LONER(X) :- nothing(X).", "LONER(Mary)").returncode, 1)
        self.assertEqual(self.check("LONER(X) :- famous(X).", "LIKES(Mary,Italy)").returncode, 1)


class Compare(unittest.TestCase):
    def compare(self, a, b):
        r = orl("compare", "--kb", data("example1.okb"), "--rule1", a, "--rule2", b)
        self.assertEqual(r.returncode, 0, r.stderr)
        return r.stdout.strip()

    def test_verdicts(self):
        self.assertEqual(self.compare("LONER(X) :- famous(X).", "LONER(X) :- famous(X), UNMARRIED(X)."),
                         "strictly-more-general")
        self.assertEqual(self.compare("LONER(X) :- famous(X), UNMARRIED(X).",
                                      "LONER(X) :- famous(X), not happy(X)."), "incomparable")
        self.assertEqual(self.compare("LIKES(X,Y) :- meets(X,Z,Y), RICH(Z).",
                                      "LIKES(X,Y) :- RICH(W), meets(X,W,Y)."), "equivalent")


class Refine(unittest.TestCase):
    def test_likes_children(self):
        r = orl("refine", "--kb", data("example1.okb"), "--bias", data("likes.obias"),
                "--rule", "LIKES(X,Y) :- meets(X,Z,Y).")
        self.assertEqual(r.returncode, 0, r.stderr)
        lines = r.stdout.splitlines()
        self.assertEqual(lines[0], "0 root LIKES(X,Y) :- meets(X,Z,Y).")
        for label, rule in [("AddDataLit_B+", "LIKES(X,Y) :- meets(X,Z,Y), happy(X)."),
                            ("AddOntoLit_B", "LIKES(X,Y) :- meets(X,Z,Y), RICH(Z)."),
                            ("AddOntoLit_B", "LIKES(X,Y) :- meets(X,Z,Y), LOVES(X,Z)."),
                            ("AddOntoLit_B", "LIKES(X,Y) :- meets(X,Z,Y), WANTS-TO-MARRY(X,Z).")]:
            self.assertIn("1 %s %s" % (label, rule), lines)

    def test_depth_zero_and_empty_bias(self):
        r = orl("refine", "--kb", data("example1.okb"), "--target", "LONER/1", "--depth", "0")
        self.assertEqual(r.stdout.splitlines(), ["0 root LONER(X)."])
        r = orl("refine", "--kb", data("example1.okb"), "--target", "LONER/1")
        self.assertEqual(r.returncode, 0, r.stderr)
        self.assertEqual(r.stdout.splitlines(), ["0 root LONER(X)."])


class Query(unittest.TestCase):
    def query(self, atom, *extra):
        return orl("query", "--kb", data("example1.okb"), "--atom", atom, *extra)

    def test_answers(self):
        self.assertEqual(self.query("famous(Mary)").stdout.strip(), "entailed")
        self.assertEqual(self.query("RICH(Joe)").stdout.strip(), "not-entailed")
        self.assertEqual(self.query("happy(Mary)").stdout.strip(), "entailed")
        self.assertEqual(self.query("happy(Mary)", "--dl-safe").stdout.strip(), "not-entailed")

    def test_unknown_predicate(self):
        r = self.query("LONER(Mary)")
        self.assertEqual(r.returncode, 1)
        self.assertTrue(r.stderr.startswith("orl: "))


if __name__ == "__main__":
    unittest.main(verbosity=2)
