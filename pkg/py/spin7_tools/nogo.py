# py/spin7_tools/nogo.py
"""
Scans showing that some structure groups carry no usable flat connection.

SO(6): every admissible orbit is certified with the column rule; none is
irreducible and unobstructed at the same time.

SO(n), n >= 9: among n columns of 3 tau bits two coincide, say at p < q.
E_pq is then fixed by every tau, and whatever (gamma, delta) do to it gives
either a fixed vector (h0 >= 1) or an obstruction witness (h2 >= 1).

Non-commutative SO(3): rho(gamma), rho(delta) rotations by pi about axes at
angle pi/4, rho(tau1) = rho(tau2) the rotation by pi about their common normal.
"""

from __future__ import annotations

import argparse
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product

from .common import EXIT_ASSERTION, EXIT_OK, write_json
from .config import group_tag, parse_group_tag, resolve
from .enumeration_catalog import (
    GD_SHIFT,
    OrbitKey,
    TAU_MASK,
    certify_columns,
    expand,
    extend_taus,
    scan_parallel,
    tau_multisets,
    tuple_from_columns,
)
from .errors import PreconditionError
from .linalg import Matrix, identity, matmul, to_matrix
from .orbifold_group import GENERATOR_NAMES
from .representation_certifier import (
    E_SIGNS,
    FlatRep,
    Witness,
    adjoint_matrix,
    certify,
    is_invariant_tensor,
    lie_basis,
    obstruction_witness,
    validate,
    witness_tensor,
)
from .tokens import TokenTuple

log = logging.getLogger(__name__)

NOGO_FAMILIES: dict[str, tuple[int, ...]] = {
    "orbits": (6,),
    "planes": (9, 10, 11, 12),
    "non-commutative": (3,),
}
FAMILY_BY_GROUP = {n: family for family, groups in NOGO_FAMILIES.items() for n in groups}


def _scan_all_orbits(chunk) -> list[tuple[int, int, int, int]]:
    """(orbits, certified, reducible, obstructed) over a chunk of tau multisets."""
    orbits = certified = reducible = obstructed = 0
    for taus in chunk:
        for key in extend_taus(taus):
            orbits += 1
            h0, _, h2 = certify_columns(key)
            if h0 == 0 and h2 == 0:
                certified += 1
            if h0 > 0:
                reducible += 1
            if h2 > 0:
                obstructed += 1
    return [(orbits, certified, reducible, obstructed)]


@dataclass
class OrbitScanReport:
    n: int
    tau_multisets: int
    orbits: int
    certified: int
    reducible: int
    obstructed: int

    @property
    def passed(self) -> bool:
        return self.certified == 0


def scan_all_orbits(n: int, *, jobs: int = 1) -> OrbitScanReport:
    if n > 8:
        raise PreconditionError("full orbit scans are meant for n <= 8; use the plane scan")
    taus = tau_multisets(n, distinct=False)
    parts = scan_parallel(_scan_all_orbits, taus, jobs, desc=f"SO({n}) orbits")
    totals = [sum(p[i] for p in parts) for i in range(4)]
    return OrbitScanReport(n, len(taus), *totals)


def repeated_tau_pair(taus: tuple[int, ...]) -> tuple[int, int] | None:
    """First coordinate pair p < q with equal tau columns, 1-based."""
    for p in range(len(taus)):
        for q in range(p + 1, len(taus)):
            if taus[p] == taus[q]:
                return p + 1, q + 1
    return None


def plane_witness_signs(key: OrbitKey, pair: tuple[int, int]) -> tuple[int, int]:
    """(gamma, delta) character of E_pq for a column key; (1, 1) means E_pq is fixed."""
    a, b = key[pair[0] - 1], key[pair[1] - 1]
    if (a ^ b) & TAU_MASK:
        raise PreconditionError("columns differ in tau bits; E_pq is not tau-fixed")
    x = a ^ b
    return (-1 if x >> 4 & 1 else 1), (-1 if x >> 3 & 1 else 1)


def plane_outcome(signs: tuple[int, int]) -> str | None:
    """'h0' for a fixed E_pq, 'e<k>' for the Lambda^2_7 partner of a witness."""
    if signs == (1, 1):
        return "h0"
    if signs in E_SIGNS:
        return f"e{E_SIGNS.index(signs) + 1}"
    return None


def plane_outcomes(taus: tuple[int, ...], pair: tuple[int, int]) -> dict[str, str | None]:
    """Outcome of E_pq for each of the four (gamma, delta) bit differences between p and q."""
    p, q = pair[0] - 1, pair[1] - 1
    out: dict[str, str | None] = {}
    for gd in range(4):
        key = (taus[p], (gd << GD_SHIFT) | taus[q])
        out[format(gd, "02b")] = plane_outcome(plane_witness_signs(key, (1, 2)))
    return out


def realised_plane_tuple(taus: tuple[int, ...], pair: tuple[int, int], gd: int) -> TokenTuple:
    """
    An admissible diagonal tuple over these tau columns whose (gamma, delta)
    bits differ by gd between p and q. Needs n >= 4.
    """
    n = len(taus)
    p, q = pair[0] - 1, pair[1] - 1
    others = [i for i in range(n) if i not in (p, q)]
    gds = [0] * n
    if gd:
        gds[q] = gds[others[0]] = gd
    else:
        gds[others[0]] = gds[others[1]] = 0b11
    return tuple_from_columns(n, [(g << GD_SHIFT) | t for g, t in zip(gds, taus)])


def realised_plane_checks(taus: tuple[int, ...], pair: tuple[int, int]) -> dict[str, bool]:
    """
    Certify each realised tuple and test the claimed outcome on it: E_pq fixed
    by every Ad rho(g) for h0, e_k (x) E_pq invariant for a witness.
    """
    n = len(taus)
    basis = lie_basis(n)
    k = basis.pairs.index((pair[0] - 1, pair[1] - 1))
    unit = tuple(Fraction(int(i == k)) for i in range(basis.dim))
    out: dict[str, bool] = {}
    for code, outcome in plane_outcomes(taus, pair).items():
        rep = expand(realised_plane_tuple(taus, pair, int(code, 2)))
        cert = certify(rep)
        if outcome == "h0":
            ok = cert.h0 >= 1 and all(adjoint_matrix(rep.images[g])[k][k] == 1 for g in GENERATOR_NAMES)
        elif outcome is None:
            ok = False
        else:
            idx = int(outcome[1:]) - 1
            sg, sd = E_SIGNS[idx]
            w = Witness(sign_gamma=sg, sign_delta=sd, element=unit, lambda27_index=idx)
            ok = cert.h2 >= 1 and is_invariant_tensor(rep, witness_tensor(rep, w))
        out[code] = ok
    return out


@dataclass
class PlaneRecord:
    taus: tuple[int, ...]
    pair: tuple[int, int] | None
    outcomes: dict[str, str | None] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.pair is not None and len(self.outcomes) == 4 and None not in self.outcomes.values()


@dataclass
class PlaneScanReport:
    n: int
    planes: list[PlaneRecord] = field(default_factory=list)
    representative: PlaneRecord | None = None
    realised: dict[str, bool] = field(default_factory=dict)

    @property
    def tau_multisets(self) -> int:
        return len(self.planes)

    @property
    def outcomes(self) -> dict[str, str | None]:
        return self.representative.outcomes if self.representative else {}

    @property
    def failures(self) -> list[tuple[int, ...]]:
        return [r.taus for r in self.planes if not r.ok]

    @property
    def passed(self) -> bool:
        realised = len(self.realised) == 4 and all(self.realised.values())
        return bool(self.planes) and not self.failures and realised


def scan_invariant_planes(n: int) -> PlaneScanReport:
    """
    For every tau multiset with even rows, a coordinate plane fixed by all taus
    and its outcome under each (gamma, delta) character. The first multiset is
    also realised as diagonal tuples and certified.
    """
    if n < 9:
        raise PreconditionError("the invariant-plane argument needs n >= 9")
    report = PlaneScanReport(n)
    for taus in tau_multisets(n, distinct=False):
        pair = repeated_tau_pair(taus)
        rec = PlaneRecord(taus, pair, plane_outcomes(taus, pair) if pair else {})
        report.planes.append(rec)
        if report.representative is None and rec.ok:
            report.representative = rec
    if report.representative is not None:
        rep = report.representative
        report.realised = realised_plane_checks(rep.taus, rep.pair)  # type: ignore[arg-type]
    log.info("SO(%d): %d tau multisets scanned, %d without a usable plane", n, report.tau_multisets, len(report.failures))
    return report


# -- non-commutative SO(3) family -----------------------------------------


def _rotation_pi(axis: tuple[int, int, int]) -> Matrix:
    """Rotation by pi about an axis with integer coordinates: 2 v v^T / |v|^2 - I."""
    norm = sum(x * x for x in axis)
    return to_matrix(
        [Fraction(2 * axis[i] * axis[j], norm) - (1 if i == j else 0) for j in range(3)]
        for i in range(3)
    )


@dataclass(frozen=True)
class NonCommutativeInstance:
    normal: int
    gamma_axis: tuple[int, int, int]
    delta_axis: tuple[int, int, int]
    tau_flags: tuple[bool, bool, bool]
    rep: FlatRep


def non_commutative_family() -> list[NonCommutativeInstance]:
    """
    The 192 integer instances: 3 normals, 8 ordered axis pairs at angle pi/4
    in the normal plane, and tau4, tau5 = tau6, tau8 each 1 or r.
    """
    out: list[NonCommutativeInstance] = []
    ident = identity(3)
    for i in range(3):
        j, k = [x for x in range(3) if x != i]

        def axis(a: int, b: int) -> tuple[int, int, int]:
            v = [0, 0, 0]
            v[j], v[k] = a, b
            return (v[0], v[1], v[2])

        straight = [axis(1, 0), axis(0, 1)]
        diagonal = [axis(1, 1), axis(1, -1)]
        pairs = [(u, v) for u in straight for v in diagonal]
        pairs += [(v, u) for u, v in pairs]

        normal = [0, 0, 0]
        normal[i] = 1
        r = _rotation_pi((normal[0], normal[1], normal[2]))
        for gamma_axis, delta_axis in pairs:
            g = _rotation_pi(gamma_axis)
            d = _rotation_pi(delta_axis)
            for flags in product((False, True), repeat=3):
                t4, t5, t8 = (r if f else ident for f in flags)
                images = {name: ident for name in GENERATOR_NAMES}
                images.update(gamma=g, delta=d, tau1=r, tau2=r, tau4=t4, tau5=t5, tau6=t5, tau8=t8)
                out.append(
                    NonCommutativeInstance(i + 1, gamma_axis, delta_axis, flags, FlatRep(3, images))
                )
    return out


@dataclass
class NonCommutativeReport:
    instances: int = 0
    invalid: list[str] = field(default_factory=list)
    unobstructed: list[str] = field(default_factory=list)
    missing_witness: list[str] = field(default_factory=list)
    witness_supports: dict[str, int] = field(default_factory=dict)
    example: dict | None = None

    @property
    def passed(self) -> bool:
        return self.instances > 0 and not (self.invalid or self.unobstructed or self.missing_witness)


def _describe(inst: NonCommutativeInstance) -> str:
    return f"normal=e{inst.normal} gamma={inst.gamma_axis} delta={inst.delta_axis} taus={inst.tau_flags}"


def scan_non_commutative() -> NonCommutativeReport:
    report = NonCommutativeReport()
    basis = lie_basis(3)
    for inst in non_commutative_family():
        report.instances += 1
        label = _describe(inst)
        if validate(inst.rep):
            report.invalid.append(label)
            continue
        cert = certify(inst.rep)
        if cert.h2 == 0:
            report.unobstructed.append(label)
        w = obstruction_witness(inst.rep)
        if w is None or not is_invariant_tensor(inst.rep, witness_tensor(inst.rep, w)):
            report.missing_witness.append(label)
            continue
        support = "+".join(basis.label(k) for k, c in enumerate(w.element) if c)
        report.witness_supports[support] = report.witness_supports.get(support, 0) + 1
        if report.example is None:
            report.example = {
                "instance": label,
                "h0": cert.h0,
                "h1": cert.h1,
                "h2": cert.h2,
                "witness": support,
                "witness_signs": [w.sign_gamma, w.sign_delta],
                "gamma_delta_squared": [
                    [str(x) for x in row]
                    for row in matmul(matmul(inst.rep.images["gamma"], inst.rep.images["delta"]),
                                      matmul(inst.rep.images["gamma"], inst.rep.images["delta"]))
                ],
            }
    return report


# -- output -----------------------------------------------------------------


def orbit_scan_to_json(r: OrbitScanReport) -> dict:
    return {
        "group": group_tag(r.n),
        "kind": "orbit-scan",
        "tau_multisets": r.tau_multisets,
        "orbits": r.orbits,
        "certified": r.certified,
        "reducible": r.reducible,
        "obstructed": r.obstructed,
        "passed": r.passed,
    }


def plane_scan_to_json(r: PlaneScanReport) -> dict:
    return {
        "group": group_tag(r.n),
        "kind": "plane-scan",
        "tau_multisets": r.tau_multisets,
        "planes": [
            {
                "taus": ".".join(format(c, "03b") for c in rec.taus),
                "plane": list(rec.pair) if rec.pair else None,
                "outcomes": dict(sorted(rec.outcomes.items())),
            }
            for rec in r.planes
        ],
        "failures": [list(t) for t in r.failures],
        "plane_outcomes": dict(sorted(r.outcomes.items())),
        "realised": {
            "taus": list(r.representative.taus) if r.representative else None,
            "checks": dict(sorted(r.realised.items())),
        },
        "passed": r.passed,
    }


def non_commutative_to_json(r: NonCommutativeReport) -> dict:
    return {
        "group": group_tag(3),
        "kind": "non-commutative",
        "instances": r.instances,
        "invalid": r.invalid,
        "unobstructed": r.unobstructed,
        "missing_witness": r.missing_witness,
        "witness_supports": dict(sorted(r.witness_supports.items())),
        "example": r.example,
        "passed": r.passed,
    }


def cmd_nogo(args: argparse.Namespace) -> int:
    cfg = resolve(args)
    family = getattr(args, "family", None) or FAMILY_BY_GROUP.get(cfg.group)
    if family is None:
        raise SystemExit("error: nogo needs --group so3, so6 or so9..so12")
    if cfg.group not in NOGO_FAMILIES[family]:
        groups = ", ".join(group_tag(n) for n in NOGO_FAMILIES[family])
        raise SystemExit(f"error: --family {family} runs on {groups}")

    if family == "non-commutative":
        r3 = scan_non_commutative()
        write_json(non_commutative_to_json(r3), cfg.out)
        passed = r3.passed
    elif family == "orbits":
        r6 = scan_all_orbits(cfg.group, jobs=cfg.jobs)
        write_json(orbit_scan_to_json(r6), cfg.out)
        passed = r6.passed
    else:
        rn = scan_invariant_planes(cfg.group)
        write_json(plane_scan_to_json(rn), cfg.out)
        passed = rn.passed
    if not passed:
        log.error("nogo %s scan for SO(%d) found a counterexample", family, cfg.group)
    return EXIT_OK if passed else EXIT_ASSERTION


def register_subcommands(subparsers) -> None:
    p = subparsers.add_parser(
        "nogo",
        help="No-go scans: diagonal orbits (so6), invariant planes (so9..so12), non-commutative family (so3)",
    )
    p.add_argument("--group", "-g", type=parse_group_tag, default=None)
    p.add_argument(
        "--family",
        choices=tuple(NOGO_FAMILIES),
        default=None,
        help="orbits: every diagonal orbit (so6); planes: a tau-fixed plane per tau multiset (so9..so12); "
        "non-commutative: the integer SO(3) family. Default: the one family the group supports",
    )
    p.add_argument("--out", default=None, help="Output file (default: stdout)")
    p.set_defaults(fn=cmd_nogo)
