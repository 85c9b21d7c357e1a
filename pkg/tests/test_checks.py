import random
from unittest.mock import patch

from django.test import SimpleTestCase, override_settings

from specht_webs.checks import CHECKS, CheckResult, remark_pair, run_checks, sample_diagrams, theta
from specht_webs.orders import boundary_leq
from specht_webs.tableaux import leq_weak


class CheckSuiteTest(SimpleTestCase):
    def test_all_checks_pass_for_six_points(self):
        results = run_checks(2)

        self.assertEqual([result.name for result in results], list(CHECKS))
        for result in results:
            self.assertTrue(result.passed, f"{result.name}: {result.detail}")

    def test_small_checks_pass_for_nine_points(self):
        results = run_checks(3, limit=10, names=["dimension", "bijections", "remark", "oracle", "coxeter"])

        for result in results:
            self.assertTrue(result.passed, f"{result.name}: {result.detail}")

    def test_unitriangular_for_nine_points(self):
        (result,) = run_checks(3, names=["unitriangular"])

        self.assertTrue(result.passed, result.detail)
        for pair in ["P->M", "M->W", "P->W"]:
            self.assertIn(f"{pair} det=1 triangular for: boundary", result.detail)

    def test_confluence_uses_whole_fork_diagrams(self):
        (result,) = run_checks(3, limit=20, names=["confluence"])

        self.assertTrue(result.passed, result.detail)
        self.assertEqual(result.detail, "20 samples")

    def test_names_keep_suite_order(self):
        results = run_checks(2, names=["coxeter", "dimension"])

        self.assertEqual([result.name for result in results], ["dimension", "coxeter"])

    def test_unknown_check(self):
        with self.assertRaises(KeyError):
            run_checks(2, names=["dimension", "bogus"])

    def test_n_out_of_range(self):
        with self.assertRaises(ValueError):
            run_checks(0)

    def test_limit_caps_samples(self):
        results = run_checks(2, limit=3, names=["confluence", "oracle"])

        self.assertEqual(results[0].detail, "3 samples")
        self.assertEqual(results[1].detail, "3 fork diagrams")

    @override_settings(SPECHT_ORACLE_SAMPLES=4)
    def test_samples_come_from_settings(self):
        (result,) = run_checks(2, names=["oracle"])

        self.assertEqual(result.detail, "4 fork diagrams")

    def test_broken_invariant_becomes_a_failure(self):
        def broken(context):
            raise RuntimeError("measure did not drop")

        with patch.dict(CHECKS, {"dimension": broken}), self.assertLogs("specht_webs.checks", "ERROR"):
            (result,) = run_checks(2, names=["dimension"])

        self.assertFalse(result.passed)
        self.assertEqual(result.detail, "measure did not drop")

    def test_failed_check_is_logged(self):
        with (
            patch.dict(CHECKS, {"dimension": lambda context: CheckResult("dimension", False, "off by one")}),
            self.assertLogs("specht_webs.checks", "WARNING") as logs,
        ):
            run_checks(2, names=["dimension"])

        self.assertIn("off by one", logs.output[0])

    def test_result_json(self):
        self.assertEqual(
            CheckResult("lemma", True, "ok").to_json(),
            {"name": "lemma", "passed": True, "detail": "ok"},
        )


class SamplingTest(SimpleTestCase):
    def test_small_cases_are_exhaustive(self):
        self.assertEqual(len(sample_diagrams(2, 50, random.Random(0))), 10)
        self.assertEqual(len(sample_diagrams(2, 4, random.Random(0))), 4)

    def test_seed_is_reproducible(self):
        self.assertEqual(sample_diagrams(4, 5, random.Random(7)), sample_diagrams(4, 5, random.Random(7)))


class FixturesTest(SimpleTestCase):
    def test_remark_pair(self):
        lower, upper = remark_pair()

        self.assertTrue(boundary_leq(lower, upper))
        self.assertFalse(boundary_leq(upper, lower))
        self.assertFalse(leq_weak(lower, upper))
        self.assertFalse(leq_weak(upper, lower))

    def test_theta_is_closed(self):
        web = theta()

        self.assertEqual(web.boundary_count, 0)
        self.assertEqual(len(web.vertices), 2)
