from __future__ import annotations

import argparse
import json
import tempfile
import unittest
from collections import Counter
from fractions import Fraction
from pathlib import Path

from spin7_tools import orbifold_group as og


class TestAffineMaps(unittest.TestCase):
    def test_compose_is_f_after_g(self) -> None:
        f = og.generator("gamma")
        g = og.generator("delta")
        x = tuple(Fraction(i, 7) for i in range(8))
        self.assertEqual(og.compose(f, g)(x), f(g(x)))
        self.assertTrue(og.compose(f, og.inverse(f)).is_identity())

    def test_translations_must_be_half_integers(self) -> None:
        with self.assertRaises(ValueError):
            og.TorusAffineMap((1,) * 8, (Fraction(1, 3),) + (Fraction(0),) * 7)
        with self.assertRaises(ValueError):
            og.TorusAffineMap((1, 2, 1, 1, 1, 1, 1, 1), (Fraction(0),) * 8)

    def test_commutator_is_compared_on_lifts(self) -> None:
        c = og.commutator(og.generator("alpha"), og.generator("gamma"))
        self.assertFalse(c.is_identity())
        self.assertTrue(c.is_identity_on_torus())
        self.assertEqual(c, og.evaluate_word([("tau2", -1), ("tau1", -1)]))

    def test_names_and_words(self) -> None:
        self.assertEqual(og.normalize_name("γ"), "gamma")
        self.assertEqual(og.normalize_name("tau_4"), "tau4")
        with self.assertRaises(ValueError):
            og.normalize_name("epsilon")
        w = og.commutator_word(og.as_word(["alpha"]), og.as_word(["tau1"]))
        self.assertEqual(og.format_word(w), "ατ1α⁻¹τ1⁻¹")
        self.assertEqual(og.format_word(()), "1")


class TestRelations(unittest.TestCase):
    def test_all_relations_hold(self) -> None:
        checks = og.verify_relations()
        self.assertEqual(len(checks), 70)
        failed = [c.relation.label for c in checks if not c.ok]
        self.assertEqual(failed, [])

    def test_relation_items(self) -> None:
        counts = Counter(r.item for r in og.RELATIONS)
        self.assertEqual(counts, {1: 28, 2: 4, 3: 6, 4: 8, 5: 8, 6: 8, 7: 8})


class TestGroup(unittest.TestCase):
    def test_sixteen_elements(self) -> None:
        elems = og.group_elements()
        self.assertEqual(len(elems), 16)
        self.assertEqual(elems[0].name, "1")
        self.assertEqual(og.linear_parts_group_order(), 16)

    def test_singular_elements(self) -> None:
        names = sorted(e.name for e in og.singular_elements())
        self.assertEqual(names, sorted(["α", "β", "αβ", "γ", "δ"]))

    def test_fixed_components_of_gamma(self) -> None:
        comps = og.fixed_point_components(og.generator("gamma"))
        self.assertEqual(len(comps), 16)
        self.assertTrue(all(c.dimension == 4 for c in comps))
        self.assertEqual(comps[0].free, (3, 4, 7, 8))
        self.assertEqual(comps[0].base_point()[0], Fraction(1, 4))

    def test_conjugation_moves_fixed_components(self) -> None:
        movers = [og.generator(n) for n in og.GENERATOR_NAMES] + [e.map for e in og.group_elements()]
        for h in og.singular_elements():
            comps = og.fixed_point_components(h.map)
            for g in movers:
                with self.subTest(element=h.name, by=g):
                    conj = og.compose(og.compose(g, h.map), og.inverse(g))
                    moved = {c.image(g) for c in comps}
                    self.assertEqual(len(moved), len(comps))
                    self.assertEqual(moved, set(og.fixed_point_components(conj)))

    def test_component_points_are_fixed(self) -> None:
        for h in og.singular_elements():
            for c in og.fixed_point_components(h.map):
                with self.subTest(element=h.name, component=c.describe()):
                    p = c.base_point()
                    self.assertTrue(all((a - b) % 1 == 0 for a, b in zip(h.map(p), p)))

    def test_orbits_partition_by_image(self) -> None:
        for h in og.singular_elements():
            comps = og.fixed_point_components(h.map)
            orbits = og._orbits(comps)
            with self.subTest(element=h.name):
                self.assertEqual(sorted(c.assignment for o in orbits for c in o), [c.assignment for c in comps])
                for orbit in orbits:
                    for e in og.group_elements():
                        self.assertEqual({c.image(e.map) for c in orbit}, set(orbit))


class TestCensus(unittest.TestCase):
    def test_totals(self) -> None:
        c = og.singular_locus_census()
        self.assertEqual(c.count_by_type(), (8, 64, 4))
        self.assertEqual(len(c.strata), 76)

    def test_strata_labels(self) -> None:
        c = og.singular_locus_census()
        table = [(1, "α", "(ii)"), (5, "β", "(ii)"), (9, "αβ", "(iii)"), (72, "αβ", "(iii)"),
                 (73, "γ", "(i)"), (74, "γ", "(i)"), (75, "δ", "(i)"), (76, "δ", "(i)")]
        for index, element, kind in table:
            with self.subTest(stratum=index):
                s = c.stratum(index)
                self.assertEqual(s.label, f"S{index}")
                self.assertEqual(s.element, element)
                self.assertEqual(s.type, kind)

    def test_element_loci(self) -> None:
        loci = {e.element: e for e in og.singular_locus_census().elements}
        self.assertEqual((loci["α"].dimension, loci["α"].count, loci["α"].orbit_sizes), (4, 16, (4, 4, 4, 4)))
        self.assertEqual((loci["αβ"].dimension, loci["αβ"].count), (0, 256))
        self.assertEqual(loci["αβ"].orbit_sizes, (4,) * 64)
        self.assertEqual(loci["γ"].orbit_sizes, (8, 8))
        self.assertEqual(loci["δ"].orbit_sizes, (8, 8))

    def test_resolution_models_and_components(self) -> None:
        c = og.singular_locus_census()
        self.assertEqual(c.stratum(1).resolution, "T4/{±1} x U")
        self.assertEqual(c.stratum(40).resolution, "U x U")
        self.assertEqual(c.stratum(76).resolution, "T4 x U")
        self.assertEqual(og.ZETA, Fraction(1, 9))
        self.assertEqual(og.CONNECTED_COMPONENTS["C5"], tuple(range(1, 73)))

    def test_cmd_census_writes_json(self) -> None:
        with tempfile.TemporaryDirectory() as td:
            out = Path(td) / "census.json"
            rc = og.cmd_census(argparse.Namespace(cmd="census", out=str(out), config=None))
            self.assertEqual(rc, 0)
            data = json.loads(out.read_text(encoding="utf-8"))
        self.assertEqual(data["totals"], [8, 64, 4])
        self.assertEqual(data["zeta"], {"num": 1, "den": 9})
        self.assertEqual([row["count"] for row in data["table"]], [8, 64, 4])
        self.assertEqual(data["table"][0]["labels"], "S1..S8")


if __name__ == "__main__":
    unittest.main()
