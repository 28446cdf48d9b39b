#!/usr/bin/env python3
"""
Verification suite tests.

Runs every suite on small corpora (they must report zero violations), checks
that violations are detected and revalidated, that reports do not depend on
the job count, and that each suite really exercises the operations its
manifest entry lists.
"""

import sys
import unittest
from contextlib import ExitStack, contextmanager
from pathlib import Path
from unittest.mock import MagicMock, patch

# Add src directory to path
sys.path.insert(0, str(Path(__file__).parent / 'src'))

import constructions
import corpus as corpus_module
import monoid_core
import points
import serialization
import verify
from constructions import POINT_KIND, ClassPredicate
from corpus import Corpus
from monoid_core import cyclic_group, semilattice_chain, trivial_monoid
from points import CheckResult
from verify import (
    SUITES,
    Report,
    UnknownSuiteError,
    manifest,
    reports_frame,
    run_all,
    run_conditions,
    run_suite,
    suite_conditions,
    suite_names,
    suite_remark_4_4,
    suite_thm_4_6,
)

# small caps keep the closure suites quick
OPTIONS = {"product_pairs": 20, "equalizer_pairs": 4}
PATCHED_MODULES = (monoid_core, points, constructions, corpus_module, serialization, verify)

# every checker and construction the suites as a whole must reach
REQUIRED_OPERATIONS = [
    "as_generalized", "jointly_strongly_epic", "is_strong_gp", "is_strong_gp_literal", "is_strong_point",
    "is_schreier_point", "is_schreier_point_literal", "representative_set", "representatives",
    "representatives_literal", "is_schreier_epi", "is_schreier_epi_literal", "is_regular_schreier_epi",
    "is_regular_schreier_epi_literal", "is_schreier_gp", "is_schreier_gp_literal",
    "pullback_gp", "pullback_point", "canonical_cone", "canonical_point", "map_F", "map_G", "class_predicate",
    "terminal_gp", "terminal_point", "product_gp", "product_point", "equalizer_gp", "equalizer_point",
    "enumerate_gp_morphisms", "enumerate_point_morphisms", "witness_g", "find_schreier_partner",
    "compose", "kernel", "image", "generated_submonoid", "product", "product_hom", "pullback",
]


def small_corpus():
    """Every class of order ≤ 2 plus the three-element chain"""
    return Corpus.from_monoids([
        trivial_monoid(), cyclic_group(2), semilattice_chain(2), semilattice_chain(3),
    ])


class TestSuitesPass(unittest.TestCase):
    """Every statement holds on the small corpora"""

    @classmethod
    def setUpClass(cls):
        cls.corpus = small_corpus()
        cls.reports = run_all(cls.corpus, options=OPTIONS)
        print(f"\n📊 Ran {len(cls.reports)} suites over {len(cls.corpus)} monoids")

    def test_zero_violations(self):
        for report in self.reports:
            with self.subTest(suite=report.suite):
                self.assertEqual(report.violations, [])
                self.assertTrue(report.passed)
                self.assertGreater(report.checked, 0)

    def test_one_report_per_suite(self):
        self.assertEqual([r.suite for r in self.reports], suite_names())

    def test_notes(self):
        by_name = {r.suite: r for r in self.reports}
        self.assertGreater(by_name["thm-4-5"].notes["witness_built"], 0)
        self.assertGreater(by_name["thm-4-5"].notes["split"], 0)
        self.assertGreater(by_name["thm-4-6"].notes["regular"], 0)
        self.assertGreater(by_name["remark-4-4"].notes["schreier"], 0)
        self.assertGreater(by_name["conditions-schreier-point"].notes["members"], 0)

    def test_order_three_corpus(self):
        corpus = Corpus(3)
        for name in ("thm-4-5", "remark-4-4", "checker-agreement"):
            with self.subTest(suite=name):
                self.assertTrue(run_suite(name, corpus).passed)

    def test_wrapper_functions(self):
        self.assertTrue(suite_remark_4_4(self.corpus).passed)
        self.assertTrue(suite_thm_4_6(self.corpus, max_c_order=2).passed)


class TestViolationsAreReported(unittest.TestCase):

    def test_non_strong_points_break_condition_c_for_all(self):
        report = run_conditions("all", POINT_KIND, small_corpus(), options=OPTIONS)
        self.assertFalse(report.passed)
        self.assertEqual({v["check"] for v in report.violations}, {"condition-c"})
        self.assertTrue(all(v["revalidated"] for v in report.violations))
        self.assertTrue(all("generated" in v["witness"] for v in report.violations))

    def test_empty_class_misses_the_terminal_object(self):
        report = run_conditions("none", "gp", small_corpus(), options=OPTIONS)
        self.assertEqual([v["check"] for v in report.violations], ["condition-b-terminal"])

    def test_broken_checker_is_caught_but_not_revalidated(self):
        with patch.object(verify, "is_strong_gp", return_value=CheckResult(False, {"generated": []})):
            report = run_suite("remark-4-4", small_corpus())
        self.assertFalse(report.passed)
        self.assertTrue(all(v["check"] == "implication" for v in report.violations))
        self.assertFalse(any(v["revalidated"] for v in report.violations))

    def test_exceptions_become_violations(self):
        with patch.object(verify, "canonical_point", side_effect=RuntimeError("boom")):
            report = run_suite("cor-2-6", small_corpus())
        self.assertTrue(report.violations)
        self.assertEqual({v["check"] for v in report.violations}, {"exception"})
        self.assertIn("boom", report.violations[0]["witness"]["error"])

    def test_custom_class_predicate(self):
        big = ClassPredicate(POINT_KIND, "big", lambda p: p.f.dom.order > 2)
        report = suite_conditions(big, small_corpus(), **OPTIONS)
        self.assertEqual(report.suite, "conditions:point:big")
        self.assertIn("condition-b-terminal", {v["check"] for v in report.violations})

    def test_custom_class_predicate_with_several_jobs(self):
        big = ClassPredicate(POINT_KIND, "big", lambda p: p.f.dom.order > 2)
        one = suite_conditions(big, small_corpus(), **OPTIONS)
        two = suite_conditions(big, small_corpus(), jobs=2, **OPTIONS)
        self.assertEqual(one.to_json(include_timing=False), two.to_json(include_timing=False))


class TestPairCaps(unittest.TestCase):
    """Closure suites use every member pair unless capped, and say when they are"""

    @classmethod
    def setUpClass(cls):
        cls.uncapped = run_conditions("schreier-point", POINT_KIND, small_corpus())
        cls.members = cls.uncapped.notes["members"]
        cls.pairs = cls.members * (cls.members + 1) // 2

    def test_default_checks_every_pair(self):
        self.assertGreater(self.pairs, 1)
        self.assertTrue(self.uncapped.passed)
        self.assertNotIn("product_pairs_skipped", self.uncapped.notes)
        self.assertNotIn("equalizer_pairs_skipped", self.uncapped.notes)

    def test_caps_are_recorded(self):
        capped = run_conditions("schreier-point", POINT_KIND, small_corpus(),
                                options={"product_pairs": 1, "equalizer_pairs": 0})
        self.assertEqual(capped.notes["product_pairs_skipped"], self.pairs - 1)
        self.assertEqual(capped.notes["equalizer_pairs_skipped"], self.pairs)
        self.assertLess(capped.checked, self.uncapped.checked)

    def test_skip_counts_do_not_depend_on_jobs(self):
        options = {"product_pairs": 2, "equalizer_pairs": 1}
        one = run_conditions("schreier-point", POINT_KIND, small_corpus(), jobs=1, options=options)
        three = run_conditions("schreier-point", POINT_KIND, small_corpus(), jobs=3, options=options)
        self.assertEqual(one.notes, three.notes)
        self.assertEqual(one.notes["product_pairs_skipped"], self.pairs - 2)


class TestReports(unittest.TestCase):

    def test_deterministic_json(self):
        corpus = small_corpus()
        first = run_suite("thm-4-5", corpus).to_json(include_timing=False)
        second = run_suite("thm-4-5", small_corpus()).to_json(include_timing=False)
        self.assertEqual(first, second)
        self.assertNotIn("elapsed_ms", first)

    def test_parallel_matches_sequential(self):
        corpus = Corpus(2)
        for name in ("remark-4-4", "conditions-schreier-gp"):
            with self.subTest(suite=name):
                one = run_suite(name, corpus, jobs=1, options=OPTIONS)
                two = run_suite(name, corpus, jobs=2, options=OPTIONS)
                self.assertEqual(one.to_json(include_timing=False), two.to_json(include_timing=False))

    def test_parallel_violations_match_sequential(self):
        corpus = small_corpus()
        one = run_conditions("all", POINT_KIND, corpus, jobs=1, options=OPTIONS)
        three = run_conditions("all", POINT_KIND, corpus, jobs=3, options=OPTIONS)
        self.assertEqual(one.violations, three.violations)
        self.assertEqual(one.checked, three.checked)

    def test_unknown_suites(self):
        with self.assertRaises(UnknownSuiteError):
            run_suite("thm-9-9", small_corpus())
        with self.assertRaises(ValueError):
            run_suite("conditions:gp:bogus", small_corpus())

    def test_manifest(self):
        entries = manifest()["suites"]
        self.assertEqual([e["name"] for e in entries], list(SUITES))
        self.assertTrue(all(e["touches"] and e["statement"] for e in entries))

    def test_reports_frame(self):
        reports = [Report(suite="a", checked=3), Report(suite="b", violations=[{"check": "x"}])]
        frame = reports_frame(reports)
        self.assertEqual(list(frame["suite"]), ["a", "b"])
        self.assertEqual(list(frame["passed"]), [True, False])


@contextmanager
def spying(ops):
    """Wrap each operation in a MagicMock in every module that holds it"""
    spies = {}
    with ExitStack() as stack:
        for op in ops:
            holders = [m for m in PATCHED_MODULES if hasattr(m, op)]
            if not holders:
                raise AssertionError(f"{op} is not defined anywhere")
            spy = MagicMock(wraps=getattr(holders[0], op))
            spies[op] = spy
            for m in holders:
                stack.enter_context(patch.object(m, op, spy))
        yield spies


class TestSuitesTouchWhatTheyClaim(unittest.TestCase):
    """Each suite calls every operation listed under `touches` in the manifest"""

    def test_touches(self):
        corpus = small_corpus()
        for name, entry in SUITES.items():
            with self.subTest(suite=name):
                with spying(entry["touches"]) as spies:
                    report = run_suite(name, corpus, options=OPTIONS)
                self.assertTrue(report.passed)
                untouched = [op for op, spy in spies.items() if not spy.called]
                self.assertEqual(untouched, [])

    def test_suites_together_reach_every_operation(self):
        with spying(REQUIRED_OPERATIONS) as spies:
            reports = run_all(small_corpus(), options=OPTIONS)
        self.assertTrue(all(r.passed for r in reports))
        untouched = sorted(op for op, spy in spies.items() if not spy.called)
        self.assertEqual(untouched, [])

    def test_manifest_lists_every_operation(self):
        listed = set().union(*(entry["touches"] for entry in SUITES.values()))
        self.assertEqual(sorted(set(REQUIRED_OPERATIONS) - listed), [])


if __name__ == "__main__":
    unittest.main()
