from __future__ import annotations

import argparse
import json
import tempfile
import unittest
from dataclasses import replace
from fractions import Fraction
from pathlib import Path

from spin7_tools import representation_certifier as rc
from spin7_tools.errors import InvalidRepresentationError, NotOrthogonalError, ParseError, PreconditionError
from spin7_tools.linalg import diagonal, identity, to_matrix
from spin7_tools.orbifold_group import GENERATOR_NAMES

DATA_DIR = Path(__file__).resolve().parents[1] / "unittest_data"

ROTATION_345 = to_matrix([["3/5", "-4/5", 0], ["4/5", "3/5", 0], [0, 0, 1]])


def _rep(name: str) -> rc.FlatRep:
    return rc.load_rep(str(DATA_DIR / name))


class TestFlatRep(unittest.TestCase):
    def test_rejects_non_orthogonal_and_reflections(self) -> None:
        images = {g: identity(3) for g in GENERATOR_NAMES}
        with self.assertRaises(NotOrthogonalError):
            rc.FlatRep(3, {**images, "gamma": diagonal([2, 1, 1])})
        with self.assertRaises(NotOrthogonalError):
            rc.FlatRep(3, {**images, "gamma": diagonal([-1, 1, 1])})
        with self.assertRaises(ValueError):
            rc.FlatRep(3, {g: m for g, m in images.items() if g != "tau8"})

    def test_load_rejects_bad_shape(self) -> None:
        with self.assertRaises(ParseError):
            _rep("rep_bad_shape.json")
        with self.assertRaises(ParseError):
            rc.load_rep(str(DATA_DIR / "does_not_exist.json"))

    def test_json_shape(self) -> None:
        rep = _rep("rep_so3_certified.json")
        obj = rc.rep_to_json(rep)
        self.assertEqual(obj["n"], 3)
        self.assertEqual(obj["images"]["gamma"][1][1], {"num": -1, "den": 1})
        self.assertEqual(rc.rep_from_json(obj), rep)


class TestValidate(unittest.TestCase):
    def test_fixtures(self) -> None:
        self.assertEqual(rc.validate(_rep("rep_trivial_so3.json")), [])
        self.assertEqual(rc.validate(_rep("rep_so3_certified.json")), [])
        violations = rc.validate(_rep("rep_so3_invalid.json"))
        self.assertIn("[α,γ] = τ2⁻¹τ1⁻¹", violations)

    def test_certify_refuses_invalid_rep(self) -> None:
        with self.assertRaises(InvalidRepresentationError) as cm:
            rc.certify(_rep("rep_so3_invalid.json"))
        self.assertTrue(cm.exception.violations)


class TestCertify(unittest.TestCase):
    def test_trivial_rep_is_reducible(self) -> None:
        r = rc.certify(rc.trivial_rep(3))
        self.assertEqual((r.h0, r.h1, r.h2), (3, 0, 0))
        self.assertFalse(r.irreducible)
        self.assertTrue(r.rigid)
        self.assertFalse(r.certified)
        self.assertEqual(len(r.bases["h0"]), 3)

    def test_certified_fixture(self) -> None:
        r = rc.certify(_rep("rep_so3_certified.json"))
        self.assertEqual((r.h0, r.h1, r.h2), (0, 0, 0))
        self.assertTrue(r.certified)

    def test_obstructed_fixture_with_witness(self) -> None:
        rep = _rep("rep_so3_obstructed.json")
        r = rc.certify(rep, with_witness=True)
        self.assertEqual((r.h0, r.h1, r.h2), (1, 0, 2))
        w = r.witness
        self.assertIsNotNone(w)
        self.assertEqual((w.sign_gamma, w.sign_delta, w.lambda27_index), (-1, 1, 1))
        self.assertEqual(w.element, (1, 0, 0))
        self.assertTrue(rc.is_invariant_tensor(rep, rc.witness_tensor(rep, w)))

    def test_non_commutative_example_is_obstructed(self) -> None:
        ident = identity(3)
        c = diagonal([-1, -1, 1])
        images = {g: ident for g in GENERATOR_NAMES}
        images.update(
            gamma=diagonal([1, -1, -1]),
            delta=to_matrix([[0, 1, 0], [1, 0, 0], [0, 0, -1]]),
            tau1=c,
            tau2=c,
        )
        rep = rc.FlatRep(3, images)
        self.assertEqual(rc.validate(rep), [])
        w = rc.obstruction_witness(rep)
        self.assertIsNotNone(w)
        self.assertEqual((w.sign_gamma, w.sign_delta), (-1, -1))
        self.assertEqual(w.element, (1, 0, 0))
        self.assertGreaterEqual(rc.certify(rep).h2, 1)
        self.assertTrue(rc.is_invariant_tensor(rep, rc.witness_tensor(rep, w)))

    def test_trivial_taus_are_obstructed(self) -> None:
        a, b = diagonal([1, -1, -1]), diagonal([-1, 1, -1])
        images = {g: identity(3) for g in GENERATOR_NAMES}
        images.update(gamma=a, delta=b)
        rep = rc.FlatRep(3, images)
        r = rc.certify(rep, with_witness=True)
        self.assertIsNotNone(r.witness)
        self.assertGreaterEqual(r.h2, 1)

    def test_rotation_by_quarter_turn_is_not_an_involution(self) -> None:
        images = {g: identity(3) for g in GENERATOR_NAMES}
        images["tau1"] = to_matrix([[0, -1, 0], [1, 0, 0], [0, 0, 1]])
        violations = rc.validate(rc.FlatRep(3, images))
        self.assertIn("ατ1 = τ1⁻¹α", violations)

    def test_witness_needs_trivial_alpha_beta(self) -> None:
        images = {g: identity(4) for g in GENERATOR_NAMES}
        images["alpha"] = diagonal([-1, -1, -1, -1])
        rep = rc.FlatRep(4, images)
        self.assertEqual(rc.validate(rep), [])
        with self.assertRaises(PreconditionError):
            rc.obstruction_witness(rep)

    def test_gauge_invariance_under_rotation(self) -> None:
        for name in ("rep_so3_obstructed.json", "rep_so3_certified.json"):
            with self.subTest(rep=name):
                rep = _rep(name)
                conj = rc.conjugate_rep(rep, ROTATION_345)
                self.assertFalse(conj.is_diagonal())
                a = rc.certify(rep)
                b = rc.certify(conj)
                self.assertEqual((a.h0, a.h1, a.h2), (b.h0, b.h1, b.h2))

    def test_report_flags_are_plain_fields(self) -> None:
        r = rc.certify(_rep("rep_so3_certified.json"))
        self.assertFalse(replace(r, rigid=False).certified)


class TestLieBasis(unittest.TestCase):
    def test_labels_and_coordinates(self) -> None:
        b = rc.lie_basis(4)
        self.assertEqual(b.dim, 6)
        self.assertEqual([b.label(k) for k in range(b.dim)], ["E12", "E13", "E14", "E23", "E24", "E34"])
        coeffs = tuple(Fraction(k) for k in range(6))
        self.assertEqual(b.coordinates(b.to_matrix(coeffs)), coeffs)

    def test_adjoint_of_rotation_fixes_its_axis(self) -> None:
        ad = rc.adjoint_matrix(ROTATION_345)
        # E12 generates rotations about x3.
        self.assertEqual([row[0] for row in ad], [1, 0, 0])


class TestCmdCertify(unittest.TestCase):
    def _run(self, name: str, witness: bool = False) -> tuple[int, dict]:
        with tempfile.TemporaryDirectory() as td:
            out = Path(td) / "report.json"
            args = argparse.Namespace(cmd="certify", input=str(DATA_DIR / name), out=str(out), witness=witness, config=None)
            code = rc.cmd_certify(args)
            return code, json.loads(out.read_text(encoding="utf-8"))

    def test_trivial(self) -> None:
        code, data = self._run("rep_trivial_so3.json")
        self.assertEqual(code, 0)
        self.assertTrue(data["valid"])
        self.assertEqual(data["h0"], 3)
        self.assertFalse(data["irreducible"])

    def test_witness_output(self) -> None:
        code, data = self._run("rep_so3_obstructed.json", witness=True)
        self.assertEqual(code, 0)
        self.assertEqual(data["witness"]["support"], ["E12"])
        self.assertEqual(data["witness"]["lambda27"], "e2")
        self.assertTrue(data["witness"]["tensor_invariant"])

    def test_invalid_rep_exit_code(self) -> None:
        code, data = self._run("rep_so3_invalid.json")
        self.assertEqual(code, 1)
        self.assertFalse(data["valid"])
        self.assertTrue(data["violations"])

    def test_missing_input(self) -> None:
        with self.assertRaises(SystemExit):
            rc.cmd_certify(argparse.Namespace(cmd="certify", input=None, out=None, witness=False, config=None))


if __name__ == "__main__":
    unittest.main()
