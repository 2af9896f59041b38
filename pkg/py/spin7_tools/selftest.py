# py/spin7_tools/selftest.py
"""
Invariant suite run by `spin7 selftest`.

Every check is cheap (well under a second each apart from the SO(3)
enumeration) and exact. A failing check never raises; it is reported.
"""

from __future__ import annotations

import argparse
import logging
from dataclasses import dataclass
from typing import Callable

from .ale_topology import ALEBundleSpec, adjoint_decomposition, adjoint_decomposition_recursive
from .common import EXIT_ASSERTION, EXIT_OK, write_json
from .config import resolve
from .enumeration_catalog import enumerate_orbits, inclusion_exclusion_so3
from .exterior_algebra import (
    cayley_form,
    cayley_structure,
    dx,
    hodge_star,
    hyperkahler_identity,
    is_spin7_linear,
    kform_to_json,
    literal_ordering_cayley_form,
    printed_project_2_21,
    project_2_21,
    s_matrix_for,
    two_form_to_vector,
    volume_form,
    wedge,
)
from .linalg import add, identity, mat_vec, matmul, scale
from .orbifold_group import (
    generator,
    linear_parts_group_order,
    singular_elements,
    singular_locus_census,
    verify_relations,
)
from .representation_certifier import certify, trivial_rep

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


def _eigen_on(s, basis, value) -> bool:
    return all(
        mat_vec(s, two_form_to_vector(e)) == tuple(value * x for x in two_form_to_vector(e))
        for e in basis
    )


def check_s_eigenvalues() -> CheckResult:
    cs = cayley_structure()
    on7 = _eigen_on(cs.s_matrix, cs.lambda27_basis, 3)
    # (S - 3)(S + 1) = 0 pins the rest of Lambda^2 to -1.
    n = len(cs.s_matrix)
    s = cs.s_matrix
    poly = add(matmul(s, s), add(scale(-2, s), scale(-3, identity(n))))
    ok = on7 and all(x == 0 for row in poly for x in row)
    return CheckResult("S-eigenvalues (3, -1)", ok, f"Lambda^2_7 eigenvalue 3: {on7}")


def check_projectors() -> CheckResult:
    cs = cayley_structure()
    p7, p21 = cs.projector7, cs.projector21
    n = len(p7)
    ok = (
        cs.rank7 == 7
        and cs.rank21 == 21
        and add(p7, p21) == identity(n)
        and matmul(p7, p7) == p7
        and matmul(p21, p21) == p21
    )
    return CheckResult("projector ranks 7 + 21", ok, f"ranks {cs.rank7}, {cs.rank21}")


def check_literal_ordering() -> CheckResult:
    lit = literal_ordering_cayley_form()
    s = s_matrix_for(lit)
    ok = lit == -cayley_form() and _eigen_on(s, cayley_structure().lambda27_basis, -3)
    return CheckResult(
        "literal dx_ijlk ordering gives -Omega0 (eigenvalues -3, +1)",
        ok,
        "standard ordering used; literal reading flips every S-eigenvalue",
    )


def check_printed_projector() -> CheckResult:
    w = project_2_21(dx(1, 2))
    ok = not w.is_zero() and printed_project_2_21(w) == -w
    return CheckResult("printed 1/4(*(Omega^w) - 3w) is -pi_21", ok)


def check_omega0() -> CheckResult:
    om = cayley_form()
    ok = len(om.terms) == 14 and hodge_star(om) == om and wedge(om, om) == volume_form() * 14
    return CheckResult("Omega0 self-dual, Omega0^Omega0 = 14 vol", ok, f"{len(om.terms)} terms")


def check_hyperkahler() -> CheckResult:
    r = hyperkahler_identity()
    ok = r["triples_hyperkahler"] and r["omega0_from_triples"] and r["printed_mu1_mu2_term_vanishes"]
    return CheckResult(
        "Omega0 from hyper-Kahler triples",
        ok,
        ", ".join(f"{k}={v}" for k, v in sorted(r.items())),
    )


def check_gamma_preserves_omega0() -> CheckResult:
    bad = [
        name
        for name in ("alpha", "beta", "gamma", "delta")
        if not is_spin7_linear(generator(name).linear_matrix())
    ]
    return CheckResult("Gamma preserves Omega0", not bad, ", ".join(bad))


def check_relations() -> CheckResult:
    checks = verify_relations()
    failed = sorted({c.relation.item for c in checks if not c.ok})
    items = sorted({c.relation.item for c in checks})
    return CheckResult(
        f"relation items {items[0]}-{items[-1]}",
        not failed,
        f"{len(checks)} identities" + (f", failing items {failed}" if failed else ""),
    )


def check_census() -> CheckResult:
    c = singular_locus_census()
    counts = c.count_by_type()
    names = [e.name for e in singular_elements()]
    order = linear_parts_group_order()
    ok = counts == (8, 64, 4) and sorted(names) == sorted(["α", "β", "αβ", "γ", "δ"]) and order == 16
    return CheckResult("singular census (8, 64, 4)", ok, f"counts {counts}, singular {names}, |linear parts| {order}")


def check_adjoint_decomposition() -> CheckResult:
    bad = []
    for m in range(0, 9):
        for k in range(0, 17 - 2 * m):
            if 2 * m + k < 1:
                continue
            spec = ALEBundleSpec(m, k)
            s = adjoint_decomposition(spec)
            dim = spec.n * (spec.n - 1) // 2
            if s != adjoint_decomposition_recursive(m, k) or s[0] + 2 * s[1] + 2 * s[2] != dim:
                bad.append(f"({m},{k})")
    return CheckResult("adjoint decomposition, 2m+k <= 16", not bad, ", ".join(bad))


def check_trivial_rep() -> CheckResult:
    r = certify(trivial_rep(3))
    ok = r.valid and (r.h0, r.h1, r.h2) == (3, 0, 0) and not r.irreducible
    return CheckResult("trivial SO(3) rep is reducible", ok, f"h = ({r.h0}, {r.h1}, {r.h2})")


def check_so3_counts() -> CheckResult:
    cat = enumerate_orbits(3)
    ie = inclusion_exclusion_so3()
    ok = cat.orbit_count == 105 and cat.raw_certified == 630 and ie.total == 630 and ie.brute_force == 630
    return CheckResult(
        "SO(3): 630 raw, 105 orbits",
        ok,
        f"orbits {cat.orbit_count}, raw {cat.raw_certified}, inclusion-exclusion {ie.total}",
    )


def check_so2_reducible() -> CheckResult:
    cat = enumerate_orbits(2, include_reducible=True)
    ok = cat.orbit_count == 0 and len(cat.reducible) == 24
    return CheckResult("SO(2): 24 reducible admissible orbits", ok, f"{len(cat.reducible)} reducible")


CHECKS: tuple[Callable[[], CheckResult], ...] = (
    check_omega0,
    check_s_eigenvalues,
    check_projectors,
    check_literal_ordering,
    check_printed_projector,
    check_hyperkahler,
    check_gamma_preserves_omega0,
    check_relations,
    check_census,
    check_adjoint_decomposition,
    check_trivial_rep,
    check_so2_reducible,
    check_so3_counts,
)


def run_checks() -> list[CheckResult]:
    out: list[CheckResult] = []
    for fn in CHECKS:
        try:
            res = fn()
        except Exception as e:  # noqa: BLE001
            res = CheckResult(fn.__name__, False, f"{type(e).__name__}: {e}")
        log.info("%s %s", "PASS" if res.ok else "FAIL", res.name)
        out.append(res)
    return out


def selftest_to_json(results: list[CheckResult]) -> dict:
    return {
        "checks": [{"name": r.name, "ok": r.ok, "detail": r.detail} for r in results],
        "omega0": kform_to_json(cayley_form()),
        "s_eigenvalues": {"standard": [3, -1], "literal_ordering": [-3, 1]},
        "passed": all(r.ok for r in results),
    }


def cmd_selftest(args: argparse.Namespace) -> int:
    cfg = resolve(args)
    results = run_checks()
    write_json(selftest_to_json(results), cfg.out)
    failed = [r for r in results if not r.ok]
    for r in failed:
        log.error("selftest: %s failed (%s)", r.name, r.detail)
    return EXIT_OK if not failed else EXIT_ASSERTION


def register_subcommands(subparsers) -> None:
    p = subparsers.add_parser("selftest", help="Run the invariant suite")
    p.add_argument("--out", default=None, help="Output file (default: stdout)")
    p.set_defaults(fn=cmd_selftest)
