# py/spin7_tools/ale_topology.py
"""
Bundle bookkeeping on the ALE side of the gluing.

An ALE bundle E = m[L] + R^k carries m copies of the Eguchi-Hanson U(1)
instanton and a trivial rank-k summand; its asymptotic holonomy is the
diagonal involution with 2m entries -1.
"""

from __future__ import annotations

import argparse
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Mapping

from .common import EXIT_ASSERTION, EXIT_OK, load_json_file, load_yaml_file, rational_from_json, rational_to_json, write_json
from .config import group_tag, parse_group_tag, resolve
from .enumeration_catalog import OrbitCatalog, enumerate_orbits, expand
from .errors import NotOrthogonalError, ParseError, PreconditionError
from .linalg import Matrix, diagonal, diagonal_entries, identity, is_diagonal, is_identity, matmul
from .orbifold_group import CONNECTED_COMPONENTS, Word, as_word, format_word, singular_locus_census, word_inverse
from .representation_certifier import CertReport, FlatRep, certify, evaluate_rep_word, load_rep, validate

log = logging.getLogger(__name__)

GLUED_STRATA = (73, 74, 75, 76)

# Strata of type (i) and the generator whose image is the asymptotic holonomy.
_HOLONOMY_SOURCE = {73: "gamma", 74: "gamma", 75: "delta", 76: "delta"}


@dataclass(frozen=True)
class ALEBundleSpec:
    m: int
    k: int

    def __post_init__(self) -> None:
        if self.m < 0 or self.k < 0:
            raise ValueError(f"m and k must be nonnegative, got ({self.m}, {self.k})")
        if self.n < 1:
            raise ValueError("an ALE bundle needs rank >= 1")

    @property
    def n(self) -> int:
        return 2 * self.m + self.k

    @property
    def trivial(self) -> bool:
        return self.m == 0

    def holonomy(self) -> Matrix:
        return diagonal([-1] * (2 * self.m) + [1] * self.k)


def ale_bundle_for(g: Matrix) -> ALEBundleSpec:
    n = len(g)
    if not is_diagonal(g) or any(x not in (1, -1) for x in diagonal_entries(g)):
        raise PreconditionError("ale_bundle_for needs a diagonal involution")
    minus = sum(1 for x in diagonal_entries(g) if x == -1)
    if minus % 2:
        raise NotOrthogonalError("odd number of -1 entries: determinant -1")
    return ALEBundleSpec(minus // 2, n - minus)


def holonomy_class(g: Matrix) -> tuple[int, int]:
    """(n, number of -1 eigenvalues) of an involution, from its trace."""
    n = len(g)
    if not is_identity(matmul(g, g)):
        raise PreconditionError("holonomy_class needs an involution")
    trace = sum((g[i][i] for i in range(n)), Fraction(0))
    return n, int((n - trace) / 2)


def adjoint_decomposition(spec: ALEBundleSpec) -> tuple[int, int, int]:
    """
    Ad E = s0 R + s1 [L] + s2 [L^2], from pair sums of the weights
    {+1 x m, -1 x m, 0 x k}.
    """
    weights = [1] * spec.m + [-1] * spec.m + [0] * spec.k
    s0 = s1 = s2 = 0
    for i in range(len(weights)):
        for j in range(i + 1, len(weights)):
            s = weights[i] + weights[j]
            if s == 0:
                s0 += 1
            elif s == 1:
                s1 += 1
            elif s == 2:
                s2 += 1
    return s0, s1, s2


def adjoint_decomposition_recursive(m: int, k: int) -> tuple[int, int, int]:
    """
    Peel off a trivial pair (k >= 2) or one copy of [L] and recurse.

    Lambda^2(V + W) = Lambda^2 V + V (x) W + Lambda^2 W.
    """
    if 2 * m + k <= 1:
        return 0, 0, 0
    if k >= 2:
        s0, s1, s2 = adjoint_decomposition_recursive(m, k - 2)
        return s0 + 1 + 2 * (k - 2), s1 + 2 * m, s2
    s0, s1, s2 = adjoint_decomposition_recursive(m - 1, k)
    return s0 + 1 + 2 * (m - 1), s1 + k, s2 + (m - 1)


def rigidity_decomposition(spec: ALEBundleSpec) -> dict[str, Any]:
    s0, s1, s2 = adjoint_decomposition(spec)
    return {
        "m": spec.m,
        "k": spec.k,
        "summands": {"R": s0, "[L]": s1, "[L^2]": s2},
        "reasons": {
            "[L]": "no parallel sections; the U(1) instanton on [L] is rigid",
            "[L^2]": "no parallel sections; the induced instanton on [L^2] is rigid",
            "R": "trivial connection, rigid",
        },
    }


@dataclass(frozen=True)
class EguchiHansonInstanton:
    group: str
    spec: ALEBundleSpec
    asymptotic_holonomy: Matrix
    finite_energy: bool
    rigid: bool


def eguchi_hanson_u1() -> EguchiHansonInstanton:
    """The U(1) = SO(2) instanton on Eguchi-Hanson space; energy and rigidity are analytic inputs."""
    spec = ALEBundleSpec(1, 0)
    return EguchiHansonInstanton("SO(2)", spec, spec.holonomy(), finite_energy=True, rigid=True)


DEFAULT_FRAMING: dict[str, str] = {
    name: (f"T{strata[0]}" if len(strata) == 1 else f"T{strata[0]}..T{strata[-1]}")
    for name, strata in CONNECTED_COMPONENTS.items()
}


@dataclass(frozen=True)
class GluingData:
    rep: FlatRep
    specs: Mapping[int, ALEBundleSpec]
    charges: Mapping[int, Fraction] = field(default_factory=dict)
    framing: Mapping[str, str] = field(default_factory=lambda: dict(DEFAULT_FRAMING))
    report: CertReport | None = None


def gluing_data_for(
    rep: FlatRep,
    charges: Mapping[int, Fraction] | None = None,
    *,
    specs: Mapping[int, ALEBundleSpec] | None = None,
    framing: Mapping[str, str] | None = None,
    default_charge: Fraction = Fraction(0),
    report: CertReport | None = None,
) -> GluingData:
    """Fill in ALE specs from rho(gamma), rho(delta) and charges from the default."""
    out_specs: dict[int, ALEBundleSpec] = dict(specs or {})
    for j in GLUED_STRATA:
        if j not in out_specs:
            out_specs[j] = ale_bundle_for(rep.images[_HOLONOMY_SOURCE[j]])
    out_charges = {j: Fraction(default_charge) for j in GLUED_STRATA}
    out_charges.update({j: Fraction(q) for j, q in (charges or {}).items()})
    return GluingData(
        rep=rep,
        specs=out_specs,
        charges=out_charges,
        framing=dict(framing) if framing is not None else dict(DEFAULT_FRAMING),
        report=report,
    )


def linking_words(j: int) -> list[Word]:
    """
    Loops around S_j for j in 1..72 together with their conjugates by
    gamma, delta and gamma delta.
    """
    census = singular_locus_census()
    element = census.stratum(j).element
    gens = {"α": ["alpha"], "β": ["beta"], "αβ": ["alpha", "beta"]}[element]
    words: list[Word] = []
    for g in gens:
        loop = as_word([g])
        for h in ((), ("gamma",), ("delta",), ("gamma", "delta")):
            c = as_word(h)
            words.append(c + loop + word_inverse(c))
    return words


@dataclass(frozen=True)
class ConditionCheck:
    condition: str
    label: str
    ok: bool
    detail: str = ""


@dataclass
class GluingReport:
    checks: list[ConditionCheck] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list[ConditionCheck]:
        return [c for c in self.checks if not c.ok]


def check_compatible_gluing_data(data: GluingData) -> GluingReport:
    out = GluingReport()
    rep = data.rep

    violations = validate(rep)
    out.checks.append(
        ConditionCheck("i", "representation", not violations, "; ".join(violations[:4]))
    )
    report = data.report
    if report is None and not violations:
        report = certify(rep)
    if report is not None:
        out.checks.append(ConditionCheck("i", "rigid", report.rigid, f"h1={report.h1}"))

    missing = [c for c in CONNECTED_COMPONENTS if not str(data.framing.get(c, "")).strip()]
    out.checks.append(
        ConditionCheck("ii", "framing", not missing, f"missing tags: {', '.join(missing)}" if missing else "")
    )

    for j in GLUED_STRATA:
        spec = data.specs.get(j)
        g = rep.images[_HOLONOMY_SOURCE[j]]
        if spec is None:
            out.checks.append(ConditionCheck("iii", f"S{j} holonomy", False, "no ALE bundle given"))
            continue
        if spec.n != rep.n:
            out.checks.append(
                ConditionCheck("iii", f"S{j} holonomy", False, f"ALE rank {spec.n} != {rep.n}")
            )
            continue
        try:
            want = holonomy_class(g)
        except PreconditionError:
            out.checks.append(
                ConditionCheck("iii", f"S{j} holonomy", False, f"rho({_HOLONOMY_SOURCE[j]}) is not an involution")
            )
            continue
        have = holonomy_class(spec.holonomy())
        out.checks.append(
            ConditionCheck(
                "iii",
                f"S{j} holonomy",
                want == have,
                "" if want == have else f"ALE (m,k)=({spec.m},{spec.k}) gives {have}, rho({_HOLONOMY_SOURCE[j]}) gives {want}",
            )
        )
        if not spec.trivial:
            q = data.charges.get(j)
            ok = q is not None and q > 0
            out.checks.append(
                ConditionCheck("iii", f"S{j} charge", ok, "" if ok else "nontrivial ALE bundle needs a positive charge")
            )

    ident = identity(rep.n)
    bad: list[str] = []
    seen: dict[Word, bool] = {}
    for j in range(1, 73):
        for w in linking_words(j):
            if w not in seen:
                seen[w] = evaluate_rep_word(rep, w) == ident
            if not seen[w]:
                bad.append(f"S{j}:{format_word(w)}")
    out.checks.append(
        ConditionCheck("iv", "trivial monodromy S1..S72", not bad, ", ".join(sorted(set(bad))[:6]))
    )
    return out


@dataclass(frozen=True)
class PontryaginData:
    p1: Mapping[int, Fraction]
    p2: Fraction = Fraction(0)


def p1_coefficients(data: GluingData) -> PontryaginData:
    """p1(Ad E_t) = -sum k_j PD[S_j] over the nontrivially glued strata; p2 = 0."""
    coeffs: dict[int, Fraction] = {}
    for j in GLUED_STRATA:
        spec = data.specs[j]
        coeffs[j] = Fraction(0) if spec.trivial else -Fraction(data.charges.get(j, 0))
    return PontryaginData(coeffs)


@dataclass(frozen=True)
class IndexInputs:
    dim_g: int
    b0: int
    b1: int
    b2_7: int
    I_pp: Fraction = Fraction(0)
    I_p2: Fraction = Fraction(0)
    I_q: Fraction = Fraction(0)


def index_value(inp: IndexInputs) -> Fraction:
    euler = inp.b0 - inp.b1 + inp.b2_7
    return -inp.dim_g * euler + Fraction(inp.I_pp) / 24 - (Fraction(inp.I_p2) - 2 * Fraction(inp.I_q)) / 12


def index_value_literal(inp: IndexInputs) -> Fraction:
    """The ungrouped reading: ... - I_p2/12 - 2 I_q."""
    euler = inp.b0 - inp.b1 + inp.b2_7
    return -inp.dim_g * euler + Fraction(inp.I_pp) / 24 - Fraction(inp.I_p2) / 12 - 2 * Fraction(inp.I_q)


def index_inputs_from_json(obj: Any, *, path: str | None = None) -> IndexInputs:
    if not isinstance(obj, dict):
        raise ParseError("index inputs must be an object", path=path)
    ints = {}
    for key in ("dim_g", "b0", "b1", "b2_7"):
        v = obj.get(key)
        if not isinstance(v, int) or isinstance(v, bool):
            raise ParseError(f"'{key}' must be an integer", path=path)
        ints[key] = v
    rats = {key: rational_from_json(obj.get(key, 0), where=key) for key in ("I_pp", "I_p2", "I_q")}
    return IndexInputs(**ints, **rats)


@dataclass(frozen=True)
class ChargesFile:
    charges: dict[int, Fraction]
    specs: dict[int, ALEBundleSpec]
    framing: dict[str, str] | None


def _stratum_index(key: Any, path: str) -> int:
    try:
        j = int(str(key).lstrip("S"))
    except ValueError:
        raise ParseError(f"bad stratum key {key!r}", path=path) from None
    if j not in GLUED_STRATA:
        raise ParseError(f"stratum {j} is not one of {GLUED_STRATA}", path=path)
    return j


def load_charges(path: str) -> ChargesFile:
    """{charges: {73: q, ...}, ale: {73: {m, k}, ...}, framing: {C1: tag, ...}}; YAML or JSON."""
    data = load_yaml_file(path)
    charges = {
        _stratum_index(k, path): rational_from_json(v, where=f"charges.{k}")
        for k, v in (data.get("charges") or {}).items()
    }
    specs: dict[int, ALEBundleSpec] = {}
    for k, v in (data.get("ale") or {}).items():
        if not isinstance(v, dict) or "m" not in v or "k" not in v:
            raise ParseError(f"ale.{k} needs m and k", path=path)
        try:
            specs[_stratum_index(k, path)] = ALEBundleSpec(int(v["m"]), int(v["k"]))
        except (TypeError, ValueError) as e:
            if isinstance(e, ParseError):
                raise
            raise ParseError(f"ale.{k}: {e}", path=path) from None
    framing = data.get("framing")
    if framing is not None:
        if not isinstance(framing, dict):
            raise ParseError("framing must be a mapping", path=path)
        framing = {str(k): str(v) for k, v in framing.items()}
    return ChargesFile(charges, specs, framing)


@dataclass
class CatalogGluingSummary:
    checked: int = 0
    failures: list[tuple[str, list[str]]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return self.checked > 0 and not self.failures


def check_catalog_gluing(
    catalog: OrbitCatalog,
    charges: Mapping[int, Fraction] | None = None,
    *,
    default_charge: Fraction = Fraction(1),
) -> CatalogGluingSummary:
    """Gluing check for every certified orbit of an enumeration catalog."""
    out = CatalogGluingSummary()
    for rec in catalog.records:
        rep = expand(rec.representative)
        data = gluing_data_for(rep, charges, default_charge=default_charge, report=rec.report)
        r = check_compatible_gluing_data(data)
        out.checked += 1
        if not r.passed:
            out.failures.append((str(rec.representative), [f"({c.condition}) {c.label}" for c in r.failures()]))
    return out


# -- output -----------------------------------------------------------------


def gluing_report_to_json(data: GluingData, report: GluingReport) -> dict:
    p = p1_coefficients(data)
    return {
        "checks": [
            {"condition": c.condition, "label": c.label, "ok": c.ok, "detail": c.detail} for c in report.checks
        ],
        "ale": {str(j): {"m": s.m, "k": s.k} for j, s in sorted(data.specs.items())},
        "charges": {str(j): rational_to_json(q) for j, q in sorted(data.charges.items())},
        "p1": {str(j): rational_to_json(q) for j, q in sorted(p.p1.items())},
        "p2": rational_to_json(p.p2),
        "passed": report.passed,
    }


def cmd_decompose(args: argparse.Namespace) -> int:
    cfg = resolve(args)
    try:
        spec = ALEBundleSpec(args.m, args.k)
    except ValueError as e:
        raise SystemExit(f"error: {e}") from None
    weight = adjoint_decomposition(spec)
    oracle = adjoint_decomposition_recursive(spec.m, spec.k)
    dim = spec.n * (spec.n - 1) // 2
    out = rigidity_decomposition(spec)
    out.update(
        {
            "n": spec.n,
            "s": list(weight),
            "recursion": list(oracle),
            "dim_so": dim,
            "passed": weight == oracle and weight[0] + 2 * weight[1] + 2 * weight[2] == dim,
        }
    )
    write_json(out, cfg.out)
    return EXIT_OK if out["passed"] else EXIT_ASSERTION


def cmd_index(args: argparse.Namespace) -> int:
    cfg = resolve(args)
    inp = index_inputs_from_json(load_json_file(args.json), path=args.json)
    out = {
        "inputs": {
            "dim_g": inp.dim_g,
            "b0": inp.b0,
            "b1": inp.b1,
            "b2_7": inp.b2_7,
            "I_pp": rational_to_json(inp.I_pp),
            "I_p2": rational_to_json(inp.I_p2),
            "I_q": rational_to_json(inp.I_q),
        },
        "index": rational_to_json(index_value(inp)),
        "index_literal": rational_to_json(index_value_literal(inp)),
    }
    write_json(out, cfg.out)
    return EXIT_OK


def cmd_check_gluing(args: argparse.Namespace) -> int:
    cfg = resolve(args)
    rep = load_rep(args.rep)
    cf = load_charges(args.charges) if args.charges else ChargesFile({}, {}, None)
    try:
        data = gluing_data_for(
            rep, cf.charges, specs=cf.specs, framing=cf.framing, default_charge=cfg.default_charge
        )
    except PreconditionError as e:
        raise SystemExit(f"error: {e}") from None
    report = check_compatible_gluing_data(data)
    write_json(gluing_report_to_json(data, report), cfg.out)
    for c in report.failures():
        log.error("(%s) %s: %s", c.condition, c.label, c.detail)
    return EXIT_OK if report.passed else EXIT_ASSERTION


def cmd_check_catalog(args: argparse.Namespace) -> int:
    cfg = resolve(args)
    if cfg.group is None:
        raise SystemExit("error: check-catalog needs --group")
    cf = load_charges(args.charges) if args.charges else ChargesFile({}, {}, None)
    charge = cfg.default_charge if cfg.default_charge > 0 else Fraction(1)
    summary = check_catalog_gluing(enumerate_orbits(cfg.group, jobs=cfg.jobs), cf.charges, default_charge=charge)
    write_json(
        {
            "group": group_tag(cfg.group),
            "checked": summary.checked,
            "failures": [{"tuple": t, "conditions": c} for t, c in summary.failures],
            "passed": summary.passed,
        },
        cfg.out,
    )
    return EXIT_OK if summary.passed else EXIT_ASSERTION


def register_subcommands(subparsers) -> None:
    p = subparsers.add_parser("topology", help="ALE bundle bookkeeping and index")
    tsub = p.add_subparsers(dest="topology_cmd", required=True)

    d = tsub.add_parser("decompose", help="Adjoint decomposition of m[L] + R^k")
    d.add_argument("--m", type=int, required=True)
    d.add_argument("--k", type=int, required=True)
    d.add_argument("--out", default=None)
    d.set_defaults(fn=cmd_decompose)

    i = tsub.add_parser("index", help="Evaluate the deformation index")
    i.add_argument("--json", "--input", dest="json", required=True, help="IndexInputs JSON file")
    i.add_argument("--out", default=None)
    i.set_defaults(fn=cmd_index)

    g = tsub.add_parser("check-gluing", help="Check compatible gluing data for a representation")
    g.add_argument("--rep", "--input", dest="rep", required=True, help="Representation JSON file")
    g.add_argument("--charges", default=None, help="Charges YAML/JSON file")
    g.add_argument("--default-charge", dest="default_charge", type=Fraction, default=None)
    g.add_argument("--out", default=None)
    g.set_defaults(fn=cmd_check_gluing)

    c = tsub.add_parser("check-catalog", help="Gluing check over every certified orbit")
    c.add_argument("--group", "-g", type=parse_group_tag, default=None)
    c.add_argument("--charges", default=None, help="Charges YAML/JSON file")
    c.add_argument("--default-charge", dest="default_charge", type=Fraction, default=None)
    c.add_argument("--out", default=None)
    c.set_defaults(fn=cmd_check_catalog)
