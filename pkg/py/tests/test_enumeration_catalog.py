from __future__ import annotations

import argparse
import json
import random
import tempfile
import unittest
from pathlib import Path

from spin7_tools import enumeration_catalog as ec
from spin7_tools.common import dumps_json
from spin7_tools.errors import PreconditionError
from spin7_tools.linalg import diagonal
from spin7_tools.representation_certifier import certify, obstruction_witness, validate
from spin7_tools.tokens import TokenTuple, parse_token, parse_tuple, shipped_appendix


def so3(text: str) -> TokenTuple:
    return parse_tuple(text, 3)


class TestExpand(unittest.TestCase):
    def test_expansion_rule(self) -> None:
        rep = ec.expand(so3("(1, c, a, c, b)"))
        c = diagonal([-1, -1, 1])
        self.assertEqual(rep.images["delta"], c)
        self.assertEqual(rep.images["tau5"], c)
        self.assertEqual(rep.images["tau6"], c)
        for g in ("alpha", "beta", "tau1", "tau2", "tau3", "tau7"):
            self.assertEqual(rep.images[g], diagonal([1, 1, 1]))
        self.assertEqual(validate(rep), [])

    def test_so4_central_inversion(self) -> None:
        rep = ec.expand(parse_tuple("(-1, 1, a, b, 1)", 4))
        self.assertEqual(rep.images["gamma"], diagonal([-1, -1, -1, -1]))

    def test_expanded_tuples_validate(self) -> None:
        for rec in ec.enumerate_orbits(3).records[:20]:
            with self.subTest(t=str(rec.representative)):
                self.assertEqual(validate(ec.expand(rec.representative)), [])


class TestKeys(unittest.TestCase):
    def test_key_invariant_under_axis_swap(self) -> None:
        # swapping axes 1 and 2 exchanges a and b
        self.assertEqual(ec.canonical_key(so3("(1, a, a, b, 1)")), ec.canonical_key(so3("(1, b, b, a, 1)")))
        self.assertNotEqual(ec.canonical_key(so3("(1, a, a, b, 1)")), ec.canonical_key(so3("(1, a, a, c, 1)")))

    def test_columns_round_trip_through_representative(self) -> None:
        t = so3("(a, c, a, b, 1)")
        key = ec.canonical_key(t)
        self.assertEqual(ec.canonical_key(ec.tuple_from_columns(3, key)), key)
        self.assertEqual(len(ec.key_to_str(key).split(".")), 3)

    def test_orbit_size(self) -> None:
        self.assertEqual(ec.orbit_size((1, 2, 3)), 6)
        self.assertEqual(ec.orbit_size((1, 1, 3)), 3)
        self.assertEqual(ec.orbit_size((0, 0, 0, 0)), 1)


class TestColumnCertification(unittest.TestCase):
    def test_matches_full_certifier(self) -> None:
        for text in ("(1, a, a, b, 1)", "(a, b, 1, 1, 1)", "(a, 1, 1, 1, 1)", "(a, c, a, b, 1)", "(1, a, a, a, a)"):
            with self.subTest(t=text):
                t = so3(text)
                r = certify(ec.expand(t))
                self.assertEqual(ec.certify_signs(t), (r.h0, r.h1, r.h2))

    def test_known_tuples(self) -> None:
        self.assertEqual(ec.certify_signs(so3("(1, a, a, b, 1)")), (0, 0, 0))
        h0, _, h2 = ec.certify_signs(so3("(a, b, 1, 1, 1)"))
        self.assertEqual(h0, 0)
        self.assertGreaterEqual(h2, 1)


class TestEnumerate(unittest.TestCase):
    def test_counts(self) -> None:
        for n in (3, 4, 5, 7, 8):
            with self.subTest(n=n):
                cat = ec.enumerate_orbits(n)
                self.assertEqual(cat.orbit_count, ec.EXPECTED_ORBITS[n])
                self.assertTrue(ec.catalog_matches_expected(cat))

    def test_so3_raw_counts(self) -> None:
        cat = ec.enumerate_orbits(3)
        self.assertEqual(cat.raw_certified, 630)
        self.assertEqual(cat.raw_admissible, 4**5 - 4**3)
        self.assertTrue(all(r.orbit_size == 6 for r in cat.records))

    def test_so2_reducible_bucket(self) -> None:
        cat = ec.enumerate_orbits(2, include_reducible=True)
        self.assertEqual(cat.orbit_count, 0)
        self.assertEqual(len(cat.reducible), 24)
        for rec in cat.reducible:
            r = certify(ec.expand(rec.representative))
            self.assertEqual((r.h0, r.h2), (1, 0))

    def test_catalog_is_sorted_and_distinct(self) -> None:
        keys = [r.key for r in ec.enumerate_orbits(4).records]
        self.assertEqual(keys, sorted(keys))
        self.assertEqual(len(set(keys)), len(keys))

    def test_every_so3_orbit_is_certified_without_witness(self) -> None:
        for rec in ec.enumerate_orbits(3).records:
            rep = ec.expand(rec.representative)
            r = certify(rep)
            self.assertTrue(r.certified, str(rec.representative))
            self.assertIsNone(obstruction_witness(rep))

    def test_block_embedding_becomes_reducible(self) -> None:
        for rec in ec.enumerate_orbits(3).records:
            wider = TokenTuple(5, rec.representative.tokens)
            self.assertGreaterEqual(ec.certify_signs(wider)[0], 1)

    def test_parallel_output_is_byte_identical(self) -> None:
        for n, reducible in ((4, False), (5, False), (3, True)):
            serial = ec.enumerate_orbits(n, include_reducible=reducible)
            for jobs in (2, 3):
                with self.subTest(n=n, jobs=jobs):
                    parallel = ec.enumerate_orbits(n, include_reducible=reducible, jobs=jobs)
                    self.assertEqual(dumps_json(ec.catalog_to_json(parallel)), dumps_json(ec.catalog_to_json(serial)))
                    self.assertEqual(ec.catalog_to_csv(parallel), ec.catalog_to_csv(serial))

    def test_limits(self) -> None:
        with self.assertRaises(PreconditionError):
            ec.enumerate_orbits(13)
        with self.assertRaises(PreconditionError):
            ec.enumerate_orbits(7, include_reducible=True)


class TestCanonicalForm(unittest.TestCase):
    def test_config_counts(self) -> None:
        self.assertEqual(len(set(ec.canonical_tau_configs(4))), 14)
        self.assertEqual(len(set(ec.canonical_tau_configs(5))), 7)
        with self.assertRaises(PreconditionError):
            ec.canonical_tau_configs(6)

    def test_so3_minimal_word(self) -> None:
        self.assertEqual(ec.canonical_form(so3("(1, b, b, a, 1)")), ec.canonical_form(so3("(1, a, a, b, 1)")))

    def test_agrees_with_keys(self) -> None:
        for n in (3, 4, 5, 7):
            with self.subTest(n=n):
                for rec in ec.enumerate_orbits(n).records:
                    self.assertEqual(ec.canonical_key(ec.canonical_form(rec.representative)), rec.key)

    def test_so8_sample(self) -> None:
        expected = tuple(parse_token(x, 8) for x in ("(-,-,-,-,+,+,+,+)", "(-,-,+,+,-,-,+,+)", "(+,-,-,+,+,-,-,+)"))
        records = ec.enumerate_orbits(8).records
        for rec in random.Random(8).sample(list(records), 400):
            with self.subTest(key=rec.key_str):
                form = ec.canonical_form(rec.representative)
                self.assertEqual(ec.canonical_key(form), rec.key)
                self.assertEqual(form.taus, expected)
                self.assertEqual(ec.certify_signs(form), (0, 0, 0))

    def test_so7_taus_are_fixed(self) -> None:
        expected = tuple(parse_token(x, 7) for x in ("(-,-,-,-,+,+,+)", "(-,-,+,+,-,-,+)", "(+,-,-,+,+,-,-)"))
        for rec in ec.enumerate_orbits(7).records[:50]:
            self.assertEqual(ec.canonical_form(rec.representative).taus, expected)

    def test_rejects_uncertified(self) -> None:
        with self.assertRaises(PreconditionError):
            ec.canonical_form(so3("(a, b, 1, 1, 1)"))


class TestAppendix(unittest.TestCase):
    def test_shipped_lists_pass(self) -> None:
        for n in (3, 4):
            with self.subTest(n=n):
                rep = ec.verify_appendix(shipped_appendix(n), n)
                self.assertTrue(rep.passed)
                self.assertEqual(rep.entries, ec.EXPECTED_ORBITS[n])

    def test_deleted_entry_is_reported_missing(self) -> None:
        entries = shipped_appendix(3)
        dropped = entries.pop(10)
        rep = ec.verify_appendix(entries, 3)
        self.assertFalse(rep.complete_ok)
        self.assertEqual([k for k, _ in rep.missing], [ec.key_to_str(ec.canonical_key(dropped))])

    def test_duplicate_and_uncertified_entries(self) -> None:
        entries = shipped_appendix(3)
        entries.append(so3("(1, b, b, a, 1)"))
        entries.append(so3("(a, b, 1, 1, 1)"))
        rep = ec.verify_appendix(entries, 3)
        self.assertFalse(rep.inequivalent_ok)
        self.assertEqual(len(rep.duplicates), 1)
        self.assertEqual([line for line, _, _ in rep.uncertified], [107])
        self.assertIn("unobstructed", rep.uncertified[0][2])
        self.assertEqual([line for line, _ in rep.extra], [107])


class TestCrossChecks(unittest.TestCase):
    def test_inclusion_exclusion(self) -> None:
        ie = ec.inclusion_exclusion_so3()
        self.assertEqual(ie.total, 630)
        self.assertEqual(ie.brute_force, 630)
        self.assertEqual(ie.orbits, 105)

    def test_key_counts_match_brute_force(self) -> None:
        for n in (2, 3):
            with self.subTest(n=n):
                self.assertTrue(ec.cross_check_orbits(n)["agree"])


class TestOutput(unittest.TestCase):
    def test_csv(self) -> None:
        text = ec.catalog_to_csv(ec.enumerate_orbits(3))
        lines = text.splitlines()
        self.assertEqual(lines[0], ",".join(ec.CSV_COLUMNS))
        self.assertEqual(len(lines), 106)
        self.assertTrue(lines[1].startswith("so3,1,"))

    def test_cmd_enumerate(self) -> None:
        with tempfile.TemporaryDirectory() as td:
            out = Path(td) / "so3.json"
            args = argparse.Namespace(
                cmd="enumerate", group=3, include_reducible=None, cross_check=True,
                format=None, out=str(out), config=None, jobs=None,
            )
            self.assertEqual(ec.cmd_enumerate(args), 0)
            data = json.loads(out.read_text(encoding="utf-8"))
        self.assertEqual(data["counts"]["orbits"], 105)
        self.assertEqual(data["counts"]["raw_certified"], 630)
        self.assertTrue(data["cross_check"]["agree"])
        self.assertIn("canonical", data["orbits"][0])

    def test_cmd_enumerate_output_ignores_jobs(self) -> None:
        outputs = {}
        with tempfile.TemporaryDirectory() as td:
            for jobs in (1, 2):
                for fmt in ("json", "csv"):
                    out = Path(td) / f"so4-{jobs}.{fmt}"
                    args = argparse.Namespace(
                        cmd="enumerate", group=4, include_reducible=None, cross_check=False,
                        format=fmt, out=str(out), config=None, jobs=jobs,
                    )
                    self.assertEqual(ec.cmd_enumerate(args), 0)
                    outputs[jobs, fmt] = out.read_bytes()
        self.assertEqual(outputs[1, "json"], outputs[2, "json"])
        self.assertEqual(outputs[1, "csv"], outputs[2, "csv"])

    def test_cmd_verify_appendix_with_list(self) -> None:
        with tempfile.TemporaryDirectory() as td:
            lst = Path(td) / "short.txt"
            lst.write_text("(1, a, a, b, 1)\n", encoding="utf-8")
            out = Path(td) / "report.json"
            args = argparse.Namespace(cmd="verify-appendix", group=3, input=str(lst), out=str(out), config=None)
            self.assertEqual(ec.cmd_verify_appendix(args), 1)
            data = json.loads(out.read_text(encoding="utf-8"))
        self.assertTrue(data["checks"]["certified"])
        self.assertFalse(data["checks"]["complete"])
        self.assertEqual(len(data["missing"]), 104)


if __name__ == "__main__":
    unittest.main()
