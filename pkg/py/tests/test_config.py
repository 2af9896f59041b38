from __future__ import annotations

import argparse
import tempfile
import unittest
from fractions import Fraction
from pathlib import Path

from spin7_tools import config
from spin7_tools.errors import ConfigError

DATA_DIR = Path(__file__).resolve().parents[1] / "unittest_data"
RUN_CONFIG = str(DATA_DIR / "run_config.yaml")


def ns(**kw) -> argparse.Namespace:
    kw.setdefault("cmd", "enumerate")
    kw.setdefault("config", None)
    return argparse.Namespace(**kw)


class TestGroupTags(unittest.TestCase):
    def test_accepted_spellings(self) -> None:
        for text, n in (("so3", 3), ("SO(3)", 3), ("so 12", 12), ("So(2)", 2)):
            with self.subTest(text=text):
                self.assertEqual(config.parse_group_tag(text), n)
        self.assertEqual(config.group_tag(7), "so7")

    def test_rejected(self) -> None:
        for text in ("su3", "so13", "so1", "3"):
            with self.subTest(text=text):
                with self.assertRaises(argparse.ArgumentTypeError):
                    config.parse_group_tag(text)

    def test_positive_int(self) -> None:
        self.assertEqual(config.positive_int("4"), 4)
        for text in ("0", "-1", "x"):
            with self.assertRaises(argparse.ArgumentTypeError):
                config.positive_int(text)


class TestResolve(unittest.TestCase):
    def test_defaults(self) -> None:
        cfg = config.resolve(ns(), environ={})
        self.assertEqual(cfg, config.RunConfig(command="enumerate"))

    def test_precedence(self) -> None:
        env = {config.ENV_JOBS: "3"}
        self.assertEqual(config.resolve(ns(), environ=env).jobs, 3)

        cfg = config.resolve(ns(config=RUN_CONFIG), environ=env)
        self.assertEqual((cfg.group, cfg.format, cfg.jobs), (3, "csv", 2))

        cfg = config.resolve(ns(config=RUN_CONFIG, jobs=4, format="json", group=5), environ=env)
        self.assertEqual((cfg.group, cfg.format, cfg.jobs), (5, "json", 4))

    def test_config_from_environment(self) -> None:
        cfg = config.resolve(ns(), environ={config.ENV_CONFIG: RUN_CONFIG})
        self.assertEqual(cfg.group, 3)

    def test_none_does_not_override(self) -> None:
        cfg = config.resolve(ns(config=RUN_CONFIG, group=None, include_reducible=None), environ={})
        self.assertEqual(cfg.group, 3)
        self.assertFalse(cfg.include_reducible)

    def test_bad_environment_jobs(self) -> None:
        for raw in ("x", "0"):
            with self.subTest(raw=raw):
                with self.assertRaises(ConfigError):
                    config.resolve(ns(), environ={config.ENV_JOBS: raw})
        self.assertEqual(config.resolve(ns(), environ={config.ENV_JOBS: " "}).jobs, 1)


class TestConfigFile(unittest.TestCase):
    def _load(self, text: str) -> dict:
        with tempfile.TemporaryDirectory() as td:
            path = Path(td) / "run.yaml"
            path.write_text(text, encoding="utf-8")
            return config.load_config_file(str(path))

    def test_all_keys(self) -> None:
        data = self._load(
            "group: SO(4)\nout: out.json\nformat: json\njobs: 3\ninclude_reducible: true\ndefault_charge: 1/2\n"
        )
        self.assertEqual(data["group"], 4)
        self.assertEqual(data["default_charge"], Fraction(1, 2))
        self.assertTrue(data["include_reducible"])

    def test_invalid_files(self) -> None:
        cases = {
            "unknown": "groups: so3\n",
            "group": "group: so99\n",
            "format": "format: xml\n",
            "jobs": "jobs: 0\n",
            "bool": "include_reducible: maybe\n",
        }
        for name, text in cases.items():
            with self.subTest(case=name):
                with self.assertRaises(ConfigError):
                    self._load(text)


if __name__ == "__main__":
    unittest.main()
