# py/spin7_tools/representation_certifier.py
"""
Flat connections on T^8/Gamma as representations of the twelve generators
into SO(n), and their deformation cohomology.

For a flat connection the three groups reduce to fixed vectors:

    h0 = dim (so(n))^pi                 (Ad)
    h1 = dim (R^8 (x) so(n))^pi         (holonomy (x) Ad)
    h2 = dim (Lambda^2_7 (x) so(n))^pi  (induced action (x) Ad)

and fixed vectors of the group are exactly the common fixed vectors of the
generators.
"""

from __future__ import annotations

import argparse
import functools
import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Any, Iterable, Mapping, Sequence

from .common import (
    EXIT_ASSERTION,
    EXIT_OK,
    load_json_file,
    matrix_to_json,
    rational_from_json,
    vector_to_json,
    write_json,
)
from .config import resolve
from .errors import InvalidRepresentationError, NotOrthogonalError, ParseError, PreconditionError
from .exterior_algebra import induced_matrix_on_lambda27
from .linalg import (
    Matrix,
    Vector,
    determinant,
    diagonal_entries,
    fixed_subspace,
    identity,
    is_diagonal,
    is_identity,
    is_orthogonal,
    kron,
    kron_diagonal,
    mat_vec,
    matmul,
    nullspace,
    to_matrix,
    transpose,
)
from .orbifold_group import GENERATOR_NAMES, RELATIONS, Word, as_word, holonomy

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class FlatRep:
    n: int
    images: Mapping[str, Matrix]

    def __post_init__(self) -> None:
        if self.n < 2:
            raise ValueError(f"structure group SO({self.n}) needs n >= 2")
        missing = [g for g in GENERATOR_NAMES if g not in self.images]
        extra = [g for g in self.images if g not in GENERATOR_NAMES]
        if missing or extra:
            raise ValueError(f"images must cover exactly the 12 generators (missing={missing}, extra={extra})")
        for g in GENERATOR_NAMES:
            m = self.images[g]
            if len(m) != self.n or any(len(r) != self.n for r in m):
                raise ValueError(f"image of {g} is not {self.n}x{self.n}")
            if not is_orthogonal(m):
                raise NotOrthogonalError(f"image of {g} is not orthogonal")
            det = _diag_det(m) if is_diagonal(m) else determinant(m)
            if det != 1:
                raise NotOrthogonalError(f"image of {g} has determinant -1; SO({self.n}) required")

    def image(self, name: str) -> Matrix:
        return self.images[name]

    def is_diagonal(self) -> bool:
        return all(is_diagonal(self.images[g]) for g in GENERATOR_NAMES)


def _diag_det(m: Matrix) -> Fraction:
    d = Fraction(1)
    for x in diagonal_entries(m):
        d *= x
    return d


def trivial_rep(n: int) -> FlatRep:
    ident = identity(n)
    return FlatRep(n, {g: ident for g in GENERATOR_NAMES})


def evaluate_rep_word(rep: FlatRep, word: Iterable[str | tuple[str, int]]) -> Matrix:
    out = identity(rep.n)
    for name, exp in as_word(word):
        m = rep.images[name]
        out = matmul(out, m if exp == 1 else transpose(m))
    return out


def _evaluate_diag_word(diags: Mapping[str, Vector], word: Word, n: int) -> Vector:
    out = [Fraction(1)] * n
    for name, _ in word:
        for i, x in enumerate(diags[name]):
            out[i] *= x
    return tuple(out)


def validate(rep: FlatRep) -> list[str]:
    """Labels of the relations that rho does not respect; empty iff rho is a homomorphism."""
    violations: list[str] = []
    if rep.is_diagonal():
        diags = {g: diagonal_entries(rep.images[g]) for g in GENERATOR_NAMES}
        for r in RELATIONS:
            if _evaluate_diag_word(diags, r.lhs, rep.n) != _evaluate_diag_word(diags, r.rhs, rep.n):
                violations.append(r.label)
        return violations
    for r in RELATIONS:
        if evaluate_rep_word(rep, r.lhs) != evaluate_rep_word(rep, r.rhs):
            violations.append(r.label)
    return violations


@dataclass(frozen=True)
class LieBasis:
    """E_ij = e_i e_j^T - e_j e_i^T for i < j (0-based), lexicographic."""

    n: int
    pairs: tuple[tuple[int, int], ...]

    @property
    def dim(self) -> int:
        return len(self.pairs)

    def element(self, k: int) -> Matrix:
        i, j = self.pairs[k]
        return tuple(
            tuple(Fraction(1) if (r, c) == (i, j) else Fraction(-1) if (r, c) == (j, i) else Fraction(0) for c in range(self.n))
            for r in range(self.n)
        )

    def coordinates(self, x: Matrix) -> Vector:
        return tuple(x[i][j] for i, j in self.pairs)

    def to_matrix(self, coeffs: Sequence[Fraction]) -> Matrix:
        m = [[Fraction(0)] * self.n for _ in range(self.n)]
        for c, (i, j) in zip(coeffs, self.pairs):
            m[i][j] += c
            m[j][i] -= c
        return tuple(tuple(r) for r in m)

    def label(self, k: int) -> str:
        i, j = self.pairs[k]
        return f"E{i + 1}{j + 1}"


@functools.lru_cache(maxsize=None)
def lie_basis(n: int) -> LieBasis:
    return LieBasis(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def adjoint_matrix(g: Matrix) -> Matrix:
    """
    Matrix of X -> g X g^T on so(n) in the E_ij basis.

    The E_kl coefficient of g E_ij g^T is g_ki g_lj - g_kj g_li.
    """
    if not is_orthogonal(g):
        raise NotOrthogonalError("adjoint_matrix needs an orthogonal matrix")
    basis = lie_basis(len(g))
    if is_diagonal(g):
        d = diagonal_entries(g)
        return tuple(
            tuple(d[i] * d[j] if r == c else Fraction(0) for c in range(basis.dim))
            for r, (i, j) in enumerate(basis.pairs)
        )
    return tuple(
        tuple(g[k][i] * g[l][j] - g[k][j] * g[l][i] for (i, j) in basis.pairs)
        for (k, l) in basis.pairs
    )


@functools.lru_cache(maxsize=None)
def _geometric_actions() -> tuple[tuple[str, Matrix, Matrix], ...]:
    """(generator, holonomy on R^8, induced action on Lambda^2_7) for each generator."""
    out = []
    for g in GENERATOR_NAMES:
        hol = holonomy((g,))
        out.append((g, hol, induced_matrix_on_lambda27(hol)))
    return tuple(out)


def tensor_fixed_subspace(pairs: Sequence[tuple[Matrix, Matrix]]) -> tuple[int, list[Vector]]:
    """Common fixed vectors of A (x) B over the listed pairs."""
    if all(is_diagonal(a) and is_diagonal(b) for a, b in pairs):
        diags = [kron_diagonal(diagonal_entries(a), diagonal_entries(b)) for a, b in pairs]
        size = len(diags[0])
        keep = [i for i in range(size) if all(d[i] == 1 for d in diags)]
        basis = [tuple(Fraction(1) if k == i else Fraction(0) for k in range(size)) for i in keep]
        return len(basis), basis
    return fixed_subspace([kron(a, b) for a, b in pairs])


@dataclass(frozen=True)
class Witness:
    """X in so(n) fixed by every Ad rho(tau_i), with Ad rho(gamma) X = sign_gamma X and likewise for delta."""

    sign_gamma: int
    sign_delta: int
    element: Vector
    lambda27_index: int

    def as_matrix(self, n: int) -> Matrix:
        return lie_basis(n).to_matrix(self.element)


@dataclass(frozen=True)
class CertReport:
    valid: bool
    violations: tuple[str, ...]
    h0: int
    h1: int
    h2: int
    irreducible: bool
    rigid: bool
    unobstructed: bool
    witness: Witness | None = None
    bases: Mapping[str, tuple[Vector, ...]] = field(default_factory=dict)

    @property
    def certified(self) -> bool:
        return self.valid and self.irreducible and self.rigid and self.unobstructed


def report_from_dims(h0: int, h1: int, h2: int, *, witness: Witness | None = None) -> CertReport:
    return CertReport(
        valid=True,
        violations=(),
        h0=h0,
        h1=h1,
        h2=h2,
        irreducible=h0 == 0,
        rigid=h1 == 0,
        unobstructed=h2 == 0,
        witness=witness,
    )


def certify(rep: FlatRep, *, with_witness: bool = False) -> CertReport:
    violations = validate(rep)
    if violations:
        raise InvalidRepresentationError(violations)

    ads = {g: adjoint_matrix(rep.images[g]) for g in GENERATOR_NAMES}
    d = lie_basis(rep.n).dim
    actions = _geometric_actions()

    h0, b0 = fixed_subspace([ads[g] for g in GENERATOR_NAMES], dim=d)
    h1, b1 = tensor_fixed_subspace([(hol, ads[g]) for g, hol, _ in actions])
    h2, b2 = tensor_fixed_subspace([(lam, ads[g]) for g, _, lam in actions])
    log.debug("certify SO(%d): h0=%d h1=%d h2=%d", rep.n, h0, h1, h2)

    witness = None
    if with_witness and _alpha_beta_trivial(rep):
        witness = obstruction_witness(rep)
    report = report_from_dims(h0, h1, h2, witness=witness)
    return replace(report, bases={"h0": tuple(b0), "h1": tuple(b1), "h2": tuple(b2)})


def _alpha_beta_trivial(rep: FlatRep) -> bool:
    return is_identity(rep.images["alpha"]) and is_identity(rep.images["beta"])


# (sign on e_k under gamma, under delta) for e_1, e_2, e_3; the other e_k are
# negated by alpha.
E_SIGNS: tuple[tuple[int, int], ...] = ((1, -1), (-1, 1), (-1, -1))


def obstruction_witness(rep: FlatRep) -> Witness | None:
    if not _alpha_beta_trivial(rep):
        raise PreconditionError("obstruction_witness needs rho(alpha) = rho(beta) = 1")

    d = lie_basis(rep.n).dim
    taus = [adjoint_matrix(rep.images[f"tau{i}"]) for i in range(1, 9)]
    dim_f, f_basis = fixed_subspace(taus, dim=d)
    if dim_f == 0:
        return None

    ad_g = adjoint_matrix(rep.images["gamma"])
    ad_d = adjoint_matrix(rep.images["delta"])
    for k, (sg, sd) in enumerate(E_SIGNS):
        rows: list[list[Fraction]] = []
        for ad, s in ((ad_g, sg), (ad_d, sd)):
            images = [tuple(y - s * x for y, x in zip(mat_vec(ad, b), b)) for b in f_basis]
            rows.extend([images[j][i] for j in range(dim_f)] for i in range(d))
        rows = [r for r in rows if any(r)]
        coeffs = nullspace(rows, ncols=dim_f) if rows else [
            tuple(Fraction(1) if i == j else Fraction(0) for i in range(dim_f)) for j in range(dim_f)
        ]
        if coeffs:
            c = coeffs[0]
            x = tuple(sum((c[j] * f_basis[j][i] for j in range(dim_f)), Fraction(0)) for i in range(d))
            return Witness(sign_gamma=sg, sign_delta=sd, element=x, lambda27_index=k)
    return None


def witness_tensor(rep: FlatRep, witness: Witness) -> Vector:
    """e_k (x) X in Lambda^2_7 (x) so(n), e-basis first."""
    unit = tuple(Fraction(1) if i == witness.lambda27_index else Fraction(0) for i in range(7))
    return tuple(a * b for a in unit for b in witness.element)


def is_invariant_tensor(rep: FlatRep, v: Sequence[Fraction]) -> bool:
    for g, _, lam in _geometric_actions():
        ad = adjoint_matrix(rep.images[g])
        if is_diagonal(lam) and is_diagonal(ad):
            d = kron_diagonal(diagonal_entries(lam), diagonal_entries(ad))
            if any(x * c != c for x, c in zip(d, v)):
                return False
        elif mat_vec(kron(lam, ad), v) != tuple(v):
            return False
    return True


def conjugate_rep(rep: FlatRep, h: Matrix) -> FlatRep:
    if not is_orthogonal(h):
        raise NotOrthogonalError("gauge transformation must be orthogonal")
    ht = transpose(h)
    return FlatRep(rep.n, {g: matmul(matmul(h, m), ht) for g, m in rep.images.items()})


def rep_to_json(rep: FlatRep) -> dict[str, Any]:
    return {"n": rep.n, "images": {g: matrix_to_json(rep.images[g]) for g in GENERATOR_NAMES}}


def rep_from_json(obj: Any, *, path: str | None = None) -> FlatRep:
    if not isinstance(obj, dict) or "n" not in obj or "images" not in obj:
        raise ParseError("rep JSON needs 'n' and 'images'", path=path)
    n = obj["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 2:
        raise ParseError(f"'n' must be an integer >= 2, got {n!r}", path=path)
    images = obj["images"]
    if not isinstance(images, dict):
        raise ParseError("'images' must be an object", path=path)
    out: dict[str, Matrix] = {}
    for g in GENERATOR_NAMES:
        if g not in images:
            raise ParseError(f"missing image for {g}", path=path)
        rows = images[g]
        if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
            raise ParseError(f"image of {g} must be a {n}x{n} array", path=path)
        out[g] = to_matrix(
            [rational_from_json(x, where=f"images.{g}[{i}][{j}]") for j, x in enumerate(r)]
            for i, r in enumerate(rows)
        )
    unknown = sorted(set(images) - set(GENERATOR_NAMES))
    if unknown:
        raise ParseError(f"unknown generators: {', '.join(unknown)}", path=path)
    return FlatRep(n, out)


def load_rep(path: str) -> FlatRep:
    return rep_from_json(load_json_file(path), path=path)


def witness_to_json(rep: FlatRep, w: Witness) -> dict[str, Any]:
    basis = lie_basis(rep.n)
    tensor = witness_tensor(rep, w)
    return {
        "signs": [w.sign_gamma, w.sign_delta],
        "element": vector_to_json(w.element),
        "support": [basis.label(k) for k, c in enumerate(w.element) if c],
        "lambda27": f"e{w.lambda27_index + 1}",
        "tensor": vector_to_json(tensor),
        "tensor_invariant": is_invariant_tensor(rep, tensor),
    }


def report_to_json(report: CertReport, rep: FlatRep | None = None) -> dict[str, Any]:
    out: dict[str, Any] = {
        "valid": report.valid,
        "violations": list(report.violations),
        "h0": report.h0,
        "h1": report.h1,
        "h2": report.h2,
        "irreducible": report.irreducible,
        "rigid": report.rigid,
        "unobstructed": report.unobstructed,
        "witness": None,
        "bases": {k: [vector_to_json(v) for v in vs] for k, vs in sorted(report.bases.items())},
    }
    if report.witness is not None and rep is not None:
        out["witness"] = witness_to_json(rep, report.witness)
    return out


def invalid_report(violations: Sequence[str]) -> CertReport:
    return CertReport(
        valid=False,
        violations=tuple(violations),
        h0=0,
        h1=0,
        h2=0,
        irreducible=False,
        rigid=False,
        unobstructed=False,
    )


def cmd_certify(args: argparse.Namespace) -> int:
    cfg = resolve(args)
    if not cfg.input:
        raise SystemExit("error: certify needs --input rep.json")
    rep = load_rep(cfg.input)
    violations = validate(rep)
    if violations:
        log.error("%s: %d relation(s) violated", cfg.input, len(violations))
        write_json(report_to_json(invalid_report(violations)), cfg.out)
        return EXIT_ASSERTION
    report = certify(rep, with_witness=bool(getattr(args, "witness", False)))
    log.info("h0=%d h1=%d h2=%d", report.h0, report.h1, report.h2)
    write_json(report_to_json(report, rep), cfg.out)
    if report.witness is not None and not is_invariant_tensor(rep, witness_tensor(rep, report.witness)):
        return EXIT_ASSERTION
    return EXIT_OK


def register_subcommands(subparsers) -> None:
    p = subparsers.add_parser("certify", help="Validate a representation and compute h0, h1, h2")
    p.add_argument("--input", "-i", default=None, help="Representation JSON file")
    p.add_argument("--witness", action="store_true", help="Search for an obstruction witness")
    p.add_argument("--out", default=None, help="Output file (default: stdout)")
    p.set_defaults(fn=cmd_certify)
