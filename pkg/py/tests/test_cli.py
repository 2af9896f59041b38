from __future__ import annotations

import contextlib
import io
import json
import tempfile
import unittest
from importlib import resources
from pathlib import Path

from spin7_tools import cli

try:
    import jsonschema
except ImportError:  # optional test extra
    jsonschema = None

DATA_DIR = Path(__file__).resolve().parents[1] / "unittest_data"


def run_quiet(argv: list[str]) -> tuple[int, str]:
    err = io.StringIO()
    with contextlib.redirect_stderr(err):
        code = cli.run(argv)
    return code, err.getvalue()


def load_schema(name: str) -> dict:
    text = resources.files("spin7_tools").joinpath("schemas", f"{name}.schema.json").read_text(encoding="utf-8")
    return json.loads(text)


class TestExitCodes(unittest.TestCase):
    def test_usage_errors_exit_2(self) -> None:
        code, err = run_quiet(["certify"])
        self.assertEqual(code, 2)
        self.assertIn("error: certify needs --input", err)

        code, err = run_quiet(["certify", "--input", str(DATA_DIR / "rep_bad_shape.json")])
        self.assertEqual(code, 2)
        self.assertIn("rep_bad_shape.json", err)

    def test_argparse_rejects_bad_group(self) -> None:
        with contextlib.redirect_stderr(io.StringIO()):
            with self.assertRaises(SystemExit) as cm:
                cli.run(["enumerate", "--group", "su3"])
        self.assertEqual(cm.exception.code, 2)

    def test_assertion_failure_exits_1(self) -> None:
        with tempfile.TemporaryDirectory() as td:
            out = str(Path(td) / "r.json")
            code, _ = run_quiet(["certify", "--input", str(DATA_DIR / "rep_so3_invalid.json"), "--out", out])
        self.assertEqual(code, 1)

    def test_bad_environment_is_a_usage_error(self) -> None:
        with tempfile.TemporaryDirectory() as td:
            cfg = Path(td) / "bad.yaml"
            cfg.write_text("jobs: zero\n", encoding="utf-8")
            code, err = run_quiet(["--config", str(cfg), "census", "--out", str(Path(td) / "c.json")])
        self.assertEqual(code, 2)
        self.assertIn("jobs", err)

    def test_negative_bundle_rank_is_a_usage_error(self) -> None:
        code, err = run_quiet(["topology", "decompose", "--m", "-1", "--k", "2"])
        self.assertEqual(code, 2)
        self.assertIn("nonnegative", err)


class TestCommands(unittest.TestCase):
    def test_enumerate_so2_csv(self) -> None:
        with tempfile.TemporaryDirectory() as td:
            out = Path(td) / "so2.csv"
            code, _ = run_quiet(["enumerate", "--group", "so2", "--include-reducible", "--format", "csv", "--out", str(out)])
            lines = out.read_text(encoding="utf-8").splitlines()
        self.assertEqual(code, 0)
        self.assertEqual(len(lines), 25)
        self.assertTrue(all(line.startswith("so2,") for line in lines[1:]))

    def test_run_config_file(self) -> None:
        with tempfile.TemporaryDirectory() as td:
            out = Path(td) / "so3.csv"
            code, _ = run_quiet(["--config", str(DATA_DIR / "run_config.yaml"), "enumerate", "--out", str(out)])
            lines = out.read_text(encoding="utf-8").splitlines()
        self.assertEqual(code, 0)
        self.assertEqual(len(lines), 106)

    def test_verify_shipped_appendix(self) -> None:
        with tempfile.TemporaryDirectory() as td:
            out = Path(td) / "a.json"
            code, _ = run_quiet(["verify-appendix", "--group", "so3", "--out", str(out)])
            data = json.loads(out.read_text(encoding="utf-8"))
        self.assertEqual(code, 0)
        self.assertTrue(data["passed"])


@unittest.skipIf(jsonschema is None, "jsonschema not installed")
class TestOutputSchemas(unittest.TestCase):
    def _check(self, schema: str, argv: list[str], expect_code: int = 0) -> dict:
        with tempfile.TemporaryDirectory() as td:
            out = Path(td) / "out.json"
            code, err = run_quiet([*argv, "--out", str(out)])
            self.assertEqual(code, expect_code, err)
            data = json.loads(out.read_text(encoding="utf-8"))
        jsonschema.validate(data, load_schema(schema))
        return data

    def test_selftest(self) -> None:
        data = self._check("selftest", ["selftest"])
        self.assertTrue(data["passed"])

    def test_census(self) -> None:
        self._check("census", ["census"])

    def test_certify(self) -> None:
        self._check("certify", ["certify", "--input", str(DATA_DIR / "rep_so3_obstructed.json"), "--witness"])
        self._check("certify", ["certify", "--input", str(DATA_DIR / "rep_so3_invalid.json")], expect_code=1)

    def test_enumerate(self) -> None:
        self._check("enumerate", ["enumerate", "--group", "so3", "--cross-check"])

    def test_verify_appendix(self) -> None:
        self._check("verify-appendix", ["verify-appendix", "--group", "so3"])

    def test_nogo(self) -> None:
        self._check("nogo", ["nogo", "--group", "so9"])

    def test_topology(self) -> None:
        self._check("topology-decompose", ["topology", "decompose", "--m", "2", "--k", "1"])
        self._check("topology-index", ["topology", "index", "--json", str(DATA_DIR / "index_inputs.json")])
        self._check(
            "topology-check-gluing",
            ["topology", "check-gluing", "--rep", str(DATA_DIR / "rep_so3_certified.json"),
             "--charges", str(DATA_DIR / "charges_so3.yaml")],
        )
        self._check("topology-check-catalog", ["topology", "check-catalog", "--group", "so3"])


if __name__ == "__main__":
    unittest.main()
