import json
import logging
import tempfile
from io import StringIO
from pathlib import Path
from unittest.mock import patch

from django.core.management import call_command
from django.test import SimpleTestCase, override_settings

from specht_webs.checks import CHECKS, CheckResult
from specht_webs.specht import finest_order_report
from specht_webs.webs import superstandard_web

from .test_helpers import T0, T1, T4, V0, V2, V4


def run(*args, stdin=None):
    out = StringIO()
    options = {"stdout": out}
    if stdin is not None:
        options["stdin"] = StringIO(stdin)
    call_command(*args, **options)
    return out.getvalue()


class CommandTestCase(SimpleTestCase):
    def assertExitStatus(self, status, *args, stdin=None):
        with self.assertLogs("specht_webs", "WARNING"), self.assertRaises(SystemExit) as cm:
            run(*args, stdin=stdin)
        self.assertEqual(cm.exception.code, status)


class EnumerateCommandTest(CommandTestCase):
    def test_json(self):
        data = json.loads(run("specht_enumerate", "2"))

        self.assertEqual(data["count"], 5)
        self.assertEqual(data["syt"][0], T0.to_json()["rows"])
        self.assertNotIn("m", data)

    def test_all_families(self):
        data = json.loads(run("specht_enumerate", "--n", "2", "--what", "all"))

        self.assertEqual(len(data["m"]), 5)
        self.assertEqual(data["m"][0], [[1, 2, 3], [4, 5, 6]])
        self.assertEqual(len(data["webs"]), 5)

    def test_text(self):
        lines = run("specht_enumerate", "2", "--format", "text").splitlines()

        self.assertEqual(lines[0], "n=2 count=5")
        self.assertEqual(lines[1].split(), ["0", "1", "4/2", "5/3", "6"])

    def test_n_is_required(self):
        self.assertExitStatus(2, "specht_enumerate")

    def test_conflicting_n(self):
        self.assertExitStatus(2, "specht_enumerate", "2", "--n", "3")

    def test_n_out_of_range(self):
        self.assertExitStatus(2, "specht_enumerate", "0")


class MapCommandTest(CommandTestCase):
    def test_psi(self):
        self.assertEqual(run("specht_map", "1 4/2 5/3 6", "--to", "psi", "--format", "text").strip(), str(V0))

    def test_phi_json(self):
        data = json.loads(run("specht_map", json.dumps(T1.to_json()), "--to", "phi"))

        self.assertEqual(data, {"n": 2, "arcs": [[1, 2, 4], [3, 5, 6]]})

    def test_non_standard_tableau(self):
        self.assertExitStatus(2, "specht_map", "2 4/1 5/3 6", "--to", "psi")

    @override_settings(SPECHT_MAX_N=1)
    def test_tableau_above_max_n(self):
        self.assertExitStatus(2, "specht_map", "1 4/2 5/3 6", "--to", "psi")


class ReduceCommandTest(CommandTestCase):
    def test_fork_diagram_in_m_from_stdin(self):
        text = run("specht_reduce", "--to", "M", "--format", "text", stdin=json.dumps(V2.to_json()))

        self.assertEqual(text.strip(), "-(1,2,3)(4,5,6) + (1,2,4)(3,5,6) + (1,5,6)(2,3,4)")

    def test_fork_diagram_in_m_json(self):
        data = json.loads(run("specht_reduce", "-", "--to", "M", stdin=json.dumps(V2.to_json())))

        self.assertEqual([term["coefficient"] for term in data], [-1, 1, 1])
        self.assertEqual(data[2]["term"]["arcs"], [[1, 5, 6], [2, 3, 4]])

    def test_fork_diagram_in_webs_from_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = Path(directory) / "v4.json"
            path.write_text(json.dumps(V4.to_json()))
            data = json.loads(run("specht_reduce", str(path), "--to", "W"))

        self.assertEqual(len(data), 5)
        self.assertTrue(all(term["coefficient"] == 1 for term in data))

    def test_invalid_json(self):
        self.assertExitStatus(2, "specht_reduce", "--to", "M", stdin="{not json")

    def test_missing_file(self):
        self.assertExitStatus(2, "specht_reduce", "/nonexistent/diagram.json", "--to", "M")

    @override_settings(SPECHT_MAX_N=1)
    def test_web_above_max_n(self):
        web = json.dumps(superstandard_web(2).to_json())
        self.assertExitStatus(2, "specht_reduce", "--to", "W", stdin=web)


class RenderCommandTest(CommandTestCase):
    def test_svg(self):
        self.assertTrue(run("specht_render", stdin=json.dumps(V0.to_json())).startswith("<svg"))

    def test_tikz(self):
        tikz = run("specht_render", "--format", "tikz", stdin=json.dumps(V0.to_json()))

        self.assertIn("\\begin{tikzpicture}", tikz)

    def test_neither_diagram_nor_web(self):
        self.assertExitStatus(2, "specht_render", stdin='{"rows": []}')

    @override_settings(SPECHT_MAX_N=1)
    def test_diagram_above_max_n(self):
        self.assertExitStatus(2, "specht_render", stdin=json.dumps(V0.to_json()))
        self.assertExitStatus(2, "specht_render", stdin=json.dumps(superstandard_web(2).to_json()))


class MatrixCommandTest(CommandTestCase):
    def test_json(self):
        data = json.loads(run("specht_matrix", "2", "--from", "P", "--to", "W", "--positivity"))

        self.assertEqual(data["determinant"], 1)
        self.assertTrue(data["unitriangular"])
        self.assertEqual(data["negative_entries"], [])
        self.assertEqual(data["order"][-1], T4.to_json()["rows"])
        self.assertTrue(data["finest_order"]["contained_in"]["weak"])

    def test_text(self):
        text = run("specht_matrix", "2", "--from", "P", "--to", "M", "--order", "boundary", "--format", "text")

        self.assertTrue(text.startswith("P -> M, n=2, order=boundary"))
        self.assertIn("determinant: 1", text)
        self.assertIn("unitriangular: True", text)

    def test_not_weakly_triangular_for_nine_points(self):
        data = json.loads(run("specht_matrix", "3", "--from", "P", "--to", "M"))

        self.assertFalse(data["unitriangular"])
        self.assertTrue(data["finest_order"]["contained_in"]["boundary"])

    def test_unknown_basis(self):
        self.assertExitStatus(2, "specht_matrix", "2", "--from", "Q", "--to", "M")


class CheckCommandTest(CommandTestCase):
    def test_passing_checks(self):
        lines = run("specht_check", "2", "--only", "dimension", "coxeter").splitlines()

        self.assertEqual(lines[0], "PASS dimension: 5 tableaux, M-diagrams and non-elliptic webs")
        self.assertEqual(lines[1], "PASS coxeter: 5 generators")

    def test_json(self):
        data = json.loads(run("specht_check", "2", "--only", "remark", "--format", "json"))

        self.assertTrue(data["passed"])
        self.assertEqual(data["checks"], [{"name": "remark", "passed": True, "detail": ""}])

    def test_seed_and_limit(self):
        text = run("specht_check", "2", "--only", "oracle", "--seed", "3", "--limit", "2")

        self.assertEqual(text.strip(), "PASS oracle: 2 fork diagrams")

    def test_failure_exits_with_one(self):
        failing = {"dimension": lambda context: CheckResult("dimension", False, "off by one")}
        with patch.dict(CHECKS, failing):
            self.assertExitStatus(1, "specht_check", "2", "--only", "dimension")

    def test_bad_limit(self):
        self.assertExitStatus(2, "specht_check", "2", "--limit", "0")


class VerboseOptionTest(SimpleTestCase):
    def test_debug_during_run_then_restored(self):
        package_logger = logging.getLogger("specht_webs")
        before = package_logger.level
        seen = []

        def spy(matrix):
            seen.append(package_logger.getEffectiveLevel())
            return finest_order_report(matrix)

        with patch("specht_webs.management.commands.specht_matrix.finest_order_report", spy):
            run("specht_matrix", "2", "--from", "M", "--to", "W", "--verbose")

        self.assertEqual(seen, [logging.DEBUG])
        self.assertEqual(package_logger.level, before)
