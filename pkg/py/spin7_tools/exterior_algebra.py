# py/spin7_tools/exterior_algebra.py
"""
Exact exterior algebra on R^8.

Forms are sparse maps from strictly increasing index tuples (1-based) to
Fraction coefficients. The metric is dx_1^2 + ... + dx_8^2 with orientation
dx_1 ^ ... ^ dx_8, and basis monomials are orthonormal.

dx_{ijkl} always means dx_i ^ dx_j ^ dx_k ^ dx_l.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Any, Iterable, Mapping, Sequence

from .errors import DegreeError, NotInSpanError, NotOrthogonalError, ParseError
from .linalg import Matrix, Vector, add, identity, is_diagonal, is_orthogonal, mat_vec, rank, scale, sub

DIM = 8
Index = tuple[int, ...]

# Lexicographic dx_{ij}, i < j.
LAMBDA2_INDEX: tuple[Index, ...] = tuple(combinations(range(1, DIM + 1), 2))

_CAYLEY_TERMS: tuple[tuple[int, Index], ...] = (
    (+1, (1, 2, 3, 4)),
    (+1, (1, 2, 5, 6)),
    (+1, (1, 2, 7, 8)),
    (+1, (1, 3, 5, 7)),
    (-1, (1, 3, 6, 8)),
    (-1, (1, 4, 5, 8)),
    (-1, (1, 4, 6, 7)),
    (-1, (2, 3, 5, 8)),
    (-1, (2, 3, 6, 7)),
    (-1, (2, 4, 5, 7)),
    (+1, (2, 4, 6, 8)),
    (+1, (3, 4, 5, 6)),
    (+1, (3, 4, 7, 8)),
    (+1, (5, 6, 7, 8)),
)

_E_BASIS: tuple[tuple[tuple[int, Index], ...], ...] = (
    ((+1, (1, 2)), (+1, (3, 4)), (+1, (5, 6)), (+1, (7, 8))),
    ((+1, (1, 3)), (-1, (2, 4)), (+1, (5, 7)), (-1, (6, 8))),
    ((+1, (1, 4)), (+1, (2, 3)), (+1, (5, 8)), (+1, (6, 7))),
    ((+1, (1, 5)), (-1, (2, 6)), (-1, (3, 7)), (+1, (4, 8))),
    ((+1, (1, 6)), (+1, (2, 5)), (+1, (3, 8)), (+1, (4, 7))),
    ((+1, (1, 7)), (-1, (2, 8)), (+1, (3, 5)), (-1, (4, 6))),
    ((+1, (1, 8)), (+1, (2, 7)), (-1, (3, 6)), (-1, (4, 5))),
)


def _sort_sign(seq: Sequence[int]) -> tuple[int, Index]:
    """(sign of the sorting permutation, sorted tuple); sign 0 on a repeated index."""
    if len(set(seq)) != len(seq):
        return 0, ()
    inversions = 0
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                inversions += 1
    return (-1 if inversions % 2 else 1), tuple(sorted(seq))


@dataclass(frozen=True)
class KForm:
    degree: int
    terms: tuple[tuple[Index, Fraction], ...]

    def __post_init__(self) -> None:
        if not 0 <= self.degree <= DIM:
            raise DegreeError(f"degree {self.degree} out of range 0..{DIM}")
        prev: Index | None = None
        for idx, c in self.terms:
            if len(idx) != self.degree:
                raise DegreeError(f"index {idx} has length {len(idx)}, expected {self.degree}")
            if any(a >= b for a, b in zip(idx, idx[1:])) or any(not 1 <= i <= DIM for i in idx):
                raise ValueError(f"index {idx} is not strictly increasing in 1..{DIM}")
            if c == 0:
                raise ValueError(f"zero coefficient stored at {idx}")
            if prev is not None and idx <= prev:
                raise ValueError("terms must be sorted and unique")
            prev = idx

    @classmethod
    def from_mapping(cls, degree: int, coeffs: Mapping[Index, Fraction | int]) -> KForm:
        items = sorted((tuple(k), Fraction(v)) for k, v in coeffs.items() if v != 0)
        return cls(degree, tuple(items))

    @classmethod
    def zero(cls, degree: int) -> KForm:
        return cls(degree, ())

    @classmethod
    def monomial(cls, indices: Sequence[int], coeff: Fraction | int = 1) -> KForm:
        """dx_{i1} ^ ... ^ dx_{ik} in the given (possibly unsorted) order."""
        sign, idx = _sort_sign(tuple(indices))
        if sign == 0:
            return cls.zero(len(indices))
        return cls.from_mapping(len(indices), {idx: sign * Fraction(coeff)})

    def as_dict(self) -> dict[Index, Fraction]:
        return dict(self.terms)

    def coefficient(self, indices: Sequence[int]) -> Fraction:
        sign, idx = _sort_sign(tuple(indices))
        if sign == 0:
            return Fraction(0)
        return sign * self.as_dict().get(idx, Fraction(0))

    def is_zero(self) -> bool:
        return not self.terms

    def _combine(self, other: KForm, sign: int) -> KForm:
        if not isinstance(other, KForm):
            return NotImplemented
        if other.degree != self.degree:
            raise DegreeError(f"cannot add degree {self.degree} and {other.degree}")
        acc = self.as_dict()
        for idx, c in other.terms:
            acc[idx] = acc.get(idx, Fraction(0)) + sign * c
        return KForm.from_mapping(self.degree, acc)

    def __add__(self, other: KForm) -> KForm:
        return self._combine(other, 1)

    def __sub__(self, other: KForm) -> KForm:
        return self._combine(other, -1)

    def __neg__(self) -> KForm:
        return KForm(self.degree, tuple((i, -c) for i, c in self.terms))

    def __mul__(self, c: Fraction | int) -> KForm:
        if not isinstance(c, (int, Fraction)):
            return NotImplemented
        return KForm.from_mapping(self.degree, {i: x * c for i, x in self.terms})

    __rmul__ = __mul__

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for idx, c in self.terms:
            name = "dx" + "".join(str(i) for i in idx) if idx else "1"
            parts.append(f"{c}*{name}" if c != 1 else name)
        return " + ".join(parts)


def dx(*indices: int) -> KForm:
    return KForm.monomial(indices)


def volume_form() -> KForm:
    return dx(*range(1, DIM + 1))


def form_sum(forms: Iterable[KForm], degree: int) -> KForm:
    acc: dict[Index, Fraction] = {}
    for f in forms:
        if f.degree != degree:
            raise DegreeError(f"expected degree {degree}, got {f.degree}")
        for idx, c in f.terms:
            acc[idx] = acc.get(idx, Fraction(0)) + c
    return KForm.from_mapping(degree, acc)


def wedge(a: KForm, b: KForm) -> KForm:
    deg = a.degree + b.degree
    if deg > DIM:
        raise DegreeError(f"wedge of degrees {a.degree}+{b.degree} exceeds {DIM}")
    acc: dict[Index, Fraction] = {}
    for ia, ca in a.terms:
        for ib, cb in b.terms:
            sign, idx = _sort_sign(ia + ib)
            if sign == 0:
                continue
            acc[idx] = acc.get(idx, Fraction(0)) + sign * ca * cb
    return KForm.from_mapping(deg, acc)


def hodge_star(a: KForm) -> KForm:
    acc: dict[Index, Fraction] = {}
    full = set(range(1, DIM + 1))
    for idx, c in a.terms:
        comp = tuple(sorted(full - set(idx)))
        sign, _ = _sort_sign(idx + comp)
        acc[comp] = acc.get(comp, Fraction(0)) + sign * c
    return KForm.from_mapping(DIM - a.degree, acc)


def inner_product(a: KForm, b: KForm) -> Fraction:
    if a.degree != b.degree:
        raise DegreeError(f"inner product of degree {a.degree} and {b.degree}")
    bd = b.as_dict()
    return sum((c * bd[i] for i, c in a.terms if i in bd), Fraction(0))


def norm_squared(a: KForm) -> Fraction:
    return inner_product(a, a)


@functools.lru_cache(maxsize=None)
def cayley_form() -> KForm:
    return KForm.from_mapping(4, {idx: s for s, idx in _CAYLEY_TERMS})


def literal_ordering_cayley_form() -> KForm:
    """
    The same 14 terms read as dx_i ^ dx_j ^ dx_l ^ dx_k (last two swapped).

    Every term changes sign, so this is -cayley_form().
    """
    acc: dict[Index, Fraction] = {}
    for s, (i, j, k, l) in _CAYLEY_TERMS:
        for idx, c in KForm.monomial((i, j, l, k), s).terms:
            acc[idx] = acc.get(idx, Fraction(0)) + c
    return KForm.from_mapping(4, acc)


def _require_two_form(alpha: KForm) -> None:
    if alpha.degree != 2:
        raise DegreeError(f"expected a 2-form, got degree {alpha.degree}")


def s_operator(alpha: KForm, omega: KForm | None = None) -> KForm:
    """alpha -> *(Omega ^ alpha)."""
    _require_two_form(alpha)
    return hodge_star(wedge(omega if omega is not None else cayley_form(), alpha))


def two_form_to_vector(alpha: KForm) -> Vector:
    _require_two_form(alpha)
    d = alpha.as_dict()
    return tuple(d.get(idx, Fraction(0)) for idx in LAMBDA2_INDEX)


def two_form_from_vector(v: Sequence[Fraction]) -> KForm:
    if len(v) != len(LAMBDA2_INDEX):
        raise ValueError(f"expected {len(LAMBDA2_INDEX)} coordinates, got {len(v)}")
    return KForm.from_mapping(2, dict(zip(LAMBDA2_INDEX, v)))


def s_matrix_for(omega: KForm) -> Matrix:
    cols = [two_form_to_vector(s_operator(KForm.monomial(idx), omega)) for idx in LAMBDA2_INDEX]
    n = len(LAMBDA2_INDEX)
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


@functools.lru_cache(maxsize=None)
def lambda27_basis() -> tuple[KForm, ...]:
    return tuple(
        KForm.from_mapping(2, {idx: s for s, idx in terms}) for terms in _E_BASIS
    )


@dataclass(frozen=True)
class CayleyStructure:
    omega0: KForm
    lambda27_basis: tuple[KForm, ...]
    s_matrix: Matrix
    projector7: Matrix
    projector21: Matrix

    @property
    def rank7(self) -> int:
        return rank(self.projector7)

    @property
    def rank21(self) -> int:
        return rank(self.projector21)


@functools.lru_cache(maxsize=None)
def cayley_structure() -> CayleyStructure:
    s = s_matrix_for(cayley_form())
    ident = identity(len(LAMBDA2_INDEX))
    quarter = Fraction(1, 4)
    p7 = scale(quarter, add(s, ident))
    p21 = scale(quarter, sub(scale(3, ident), s))
    return CayleyStructure(
        omega0=cayley_form(),
        lambda27_basis=lambda27_basis(),
        s_matrix=s,
        projector7=p7,
        projector21=p21,
    )


def project_2_7(omega: KForm) -> KForm:
    _require_two_form(omega)
    return two_form_from_vector(mat_vec(cayley_structure().projector7, two_form_to_vector(omega)))


def project_2_21(omega: KForm) -> KForm:
    _require_two_form(omega)
    return two_form_from_vector(mat_vec(cayley_structure().projector21, two_form_to_vector(omega)))


def printed_project_2_21(omega: KForm) -> KForm:
    """1/4 (*(Omega ^ omega) - 3 omega) exactly as printed; equals -project_2_21."""
    _require_two_form(omega)
    return (s_operator(omega) - omega * 3) * Fraction(1, 4)


def _require_orthogonal(g: Matrix) -> None:
    if len(g) != DIM or not is_orthogonal(g):
        raise NotOrthogonalError(f"expected an orthogonal {DIM}x{DIM} matrix")


def pullback(g: Matrix, a: KForm) -> KForm:
    """g^* a, where g^* dx_i = sum_j g[i][j] dx_j."""
    _require_orthogonal(g)
    if a.degree == 0:
        return a
    if is_diagonal(g):
        acc = {}
        for idx, c in a.terms:
            s = Fraction(1)
            for i in idx:
                s *= g[i - 1][i - 1]
            acc[idx] = c * s
        return KForm.from_mapping(a.degree, acc)

    images = [
        KForm.from_mapping(1, {(j + 1,): g[i][j] for j in range(DIM) if g[i][j] != 0})
        for i in range(DIM)
    ]
    out = KForm.zero(a.degree)
    for idx, c in a.terms:
        term = images[idx[0] - 1]
        for i in idx[1:]:
            term = wedge(term, images[i - 1])
        out = out + term * c
    return out


def is_spin7_linear(g: Matrix) -> bool:
    return pullback(g, cayley_form()) == cayley_form()


def induced_matrix_on_lambda27(g: Matrix) -> Matrix:
    """
    Matrix of e_i -> g^* e_i in the e-basis (column i holds the image of e_i).
    """
    basis = lambda27_basis()
    cols: list[Vector] = []
    for e in basis:
        img = pullback(g, e)
        coeffs = tuple(inner_product(img, f) / norm_squared(f) for f in basis)
        back = form_sum((f * c for f, c in zip(basis, coeffs) if c), 2)
        if back != img:
            raise NotInSpanError("pullback leaves the span of e_1..e_7; not a Spin(7) map")
        cols.append(coeffs)
    n = len(basis)
    return tuple(tuple(cols[j][i] for j in range(n)) for i in range(n))


def hyperkahler_triples() -> tuple[tuple[KForm, KForm, KForm], tuple[KForm, KForm, KForm]]:
    """
    (mu, omega): mu on the x1..x4 factor, omega on the x5..x8 factor, both
    positively oriented hyper-Kahler triples.
    """
    mu = (dx(1, 2) + dx(3, 4), dx(1, 3) - dx(2, 4), dx(1, 4) + dx(2, 3))
    omega = (-(dx(5, 6) + dx(7, 8)), -(dx(5, 7) - dx(6, 8)), dx(5, 8) + dx(6, 7))
    return mu, omega


def hyperkahler_identity() -> dict[str, bool]:
    mu, om = hyperkahler_triples()
    vol_mu = dx(1, 2, 3, 4)
    vol_om = dx(5, 6, 7, 8)
    triples_ok = all(
        wedge(mu[i], mu[j]) == (vol_mu * 2 if i == j else KForm.zero(4))
        and wedge(om[i], om[j]) == (vol_om * 2 if i == j else KForm.zero(4))
        for i in range(3)
        for j in range(3)
    )
    cross = form_sum((wedge(om[i], mu[i]) for i in range(3)), 4)
    half = Fraction(1, 2)
    assembled = wedge(mu[0], mu[0]) * half + wedge(om[0], om[0]) * half - cross
    printed = wedge(om[0], om[0]) * half + wedge(mu[0], mu[1]) * half - cross
    return {
        "triples_hyperkahler": triples_ok,
        "omega0_from_triples": assembled == cayley_form(),
        "printed_mu1_mu2_term_vanishes": wedge(mu[0], mu[1]).is_zero(),
        "printed_variant_matches": printed == cayley_form(),
    }


def kform_to_json(a: KForm) -> dict[str, Any]:
    return {
        "degree": a.degree,
        "terms": [
            {"idx": list(idx), "num": c.numerator, "den": c.denominator} for idx, c in a.terms
        ],
    }


def kform_from_json(obj: Any) -> KForm:
    if not isinstance(obj, dict) or "degree" not in obj or "terms" not in obj:
        raise ParseError("KForm JSON needs 'degree' and 'terms'")
    degree = obj["degree"]
    if not isinstance(degree, int):
        raise ParseError("KForm degree must be an integer")
    acc: dict[Index, Fraction] = {}
    for k, t in enumerate(obj["terms"]):
        try:
            idx = tuple(int(i) for i in t["idx"])
            c = Fraction(int(t["num"]), int(t["den"]))
        except (KeyError, TypeError, ValueError, ZeroDivisionError) as e:
            raise ParseError(f"KForm term {k} is malformed") from e
        if list(idx) != sorted(set(idx)):
            raise ParseError(f"KForm term {k} index {list(idx)} is not strictly increasing")
        acc[idx] = acc.get(idx, Fraction(0)) + c
    return KForm.from_mapping(degree, acc)
