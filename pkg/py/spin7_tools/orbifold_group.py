# py/spin7_tools/orbifold_group.py
"""
The orbifold group of T^8/Gamma as affine isometries of R^8.

Gamma is generated by alpha, beta, gamma, delta; together with the unit
translations tau1..tau8 these twelve maps generate the orbifold fundamental
group. Maps compose right to left: (f g)(x) = f(g(x)).
"""

from __future__ import annotations

import argparse
import functools
import logging
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .common import EXIT_ASSERTION, EXIT_OK, rational_to_json, write_json
from .config import resolve
from .errors import PreconditionError
from .linalg import Matrix, diagonal

log = logging.getLogger(__name__)

DIM = 8
HALF = Fraction(1, 2)

GENERATOR_NAMES: tuple[str, ...] = (
    "alpha",
    "beta",
    "gamma",
    "delta",
    "tau1",
    "tau2",
    "tau3",
    "tau4",
    "tau5",
    "tau6",
    "tau7",
    "tau8",
)

_SYMBOL = {"alpha": "α", "beta": "β", "gamma": "γ", "delta": "δ"}

Word = tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class TorusAffineMap:
    """
    x -> diag(linear) x + translation.

    The translation is kept as an exact lift in R^8; reduced() gives the map of
    T^8 with translation in [0, 1).
    """

    linear: tuple[int, ...]
    translation: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if len(self.linear) != DIM or len(self.translation) != DIM:
            raise ValueError(f"affine maps of R^{DIM} need {DIM} signs and {DIM} offsets")
        if any(s not in (1, -1) for s in self.linear):
            raise ValueError(f"linear part must be diagonal +-1, got {self.linear}")
        if any((2 * t).denominator != 1 for t in self.translation):
            raise ValueError(f"translation entries must lie in (1/2)Z, got {self.translation}")

    def __call__(self, x: Sequence[Fraction]) -> tuple[Fraction, ...]:
        return tuple(s * xi + t for s, xi, t in zip(self.linear, x, self.translation))

    def reduced(self) -> TorusAffineMap:
        return TorusAffineMap(self.linear, tuple(t % 1 for t in self.translation))

    def is_identity(self) -> bool:
        return all(s == 1 for s in self.linear) and not any(self.translation)

    def is_identity_on_torus(self) -> bool:
        return self.reduced().is_identity()

    def linear_matrix(self) -> Matrix:
        return diagonal(self.linear)


IDENTITY = TorusAffineMap((1,) * DIM, (Fraction(0),) * DIM)


def _translation(i: int) -> TorusAffineMap:
    t = [Fraction(0)] * DIM
    t[i - 1] = Fraction(1)
    return TorusAffineMap((1,) * DIM, tuple(t))


def _map(signs: str, offsets: Sequence[Fraction]) -> TorusAffineMap:
    return TorusAffineMap(tuple(-1 if c == "-" else 1 for c in signs), tuple(offsets))


_Z = Fraction(0)

_GENERATORS: dict[str, TorusAffineMap] = {
    "alpha": _map("----++++", (_Z,) * DIM),
    "beta": _map("++++----", (_Z,) * DIM),
    "gamma": _map("--++--++", (HALF, HALF, _Z, _Z, HALF, HALF, _Z, _Z)),
    "delta": _map("-+-+-+-+", (_Z, _Z, HALF, _Z, HALF, _Z, HALF, _Z)),
    **{f"tau{i}": _translation(i) for i in range(1, DIM + 1)},
}


def normalize_name(name: str) -> str:
    key = name.strip()
    for long, sym in _SYMBOL.items():
        if key == sym:
            return long
    key = key.lower().replace("τ", "tau").replace("_", "")
    if key not in _GENERATORS:
        raise ValueError(f"unknown generator {name!r}; expected one of {', '.join(GENERATOR_NAMES)}")
    return key


def generator(name: str) -> TorusAffineMap:
    return _GENERATORS[normalize_name(name)]


def compose(f: TorusAffineMap, g: TorusAffineMap) -> TorusAffineMap:
    linear = tuple(a * b for a, b in zip(f.linear, g.linear))
    translation = tuple(s * tg + tf for s, tg, tf in zip(f.linear, g.translation, f.translation))
    return TorusAffineMap(linear, translation)


def inverse(f: TorusAffineMap) -> TorusAffineMap:
    return TorusAffineMap(f.linear, tuple(-s * t for s, t in zip(f.linear, f.translation)))


def commutator(f: TorusAffineMap, g: TorusAffineMap) -> TorusAffineMap:
    return compose(compose(f, g), compose(inverse(f), inverse(g)))


def as_word(word: Iterable[str | tuple[str, int]]) -> Word:
    out: list[tuple[str, int]] = []
    for item in word:
        if isinstance(item, str):
            out.append((normalize_name(item), 1))
        else:
            name, exp = item
            if exp not in (1, -1):
                raise ValueError(f"word exponents must be +-1, got {exp}")
            out.append((normalize_name(name), exp))
    return tuple(out)


def word_inverse(word: Word) -> Word:
    return tuple((name, -exp) for name, exp in reversed(word))


def commutator_word(a: Word, b: Word) -> Word:
    return a + b + word_inverse(a) + word_inverse(b)


def format_word(word: Word) -> str:
    if not word:
        return "1"
    parts = []
    for name, exp in word:
        sym = _SYMBOL.get(name, name.replace("tau", "τ"))
        parts.append(sym if exp == 1 else f"{sym}⁻¹")
    return "".join(parts)


def evaluate_word(word: Iterable[str | tuple[str, int]]) -> TorusAffineMap:
    out = IDENTITY
    for name, exp in as_word(word):
        g = _GENERATORS[name]
        out = compose(out, g if exp == 1 else inverse(g))
    return out


@dataclass(frozen=True)
class Relation:
    item: int
    label: str
    lhs: Word
    rhs: Word


def _w(*names: str) -> Word:
    return tuple((n.lstrip("~"), -1 if n.startswith("~") else 1) for n in names)


def _build_relations() -> tuple[Relation, ...]:
    rel: list[Relation] = []
    taus = [f"tau{i}" for i in range(1, DIM + 1)]

    for i in range(DIM):
        for j in range(i + 1, DIM):
            lhs = commutator_word(_w(taus[i]), _w(taus[j]))
            rel.append(Relation(1, f"[τ{i + 1},τ{j + 1}] = 1", lhs, ()))

    for g in ("alpha", "beta", "gamma", "delta"):
        rel.append(Relation(2, f"{_SYMBOL[g]}² = 1", _w(g, g), ()))

    brackets = (
        ("alpha", "beta", ()),
        ("alpha", "gamma", _w("~tau2", "~tau1")),
        ("alpha", "delta", _w("~tau3")),
        ("beta", "gamma", _w("~tau6", "~tau5")),
        ("beta", "delta", _w("~tau7")),
        ("gamma", "delta", _w("tau1")),
    )
    for a, b, rhs in brackets:
        label = f"[{_SYMBOL[a]},{_SYMBOL[b]}] = {format_word(rhs)}"
        rel.append(Relation(3, label, commutator_word(_w(a), _w(b)), rhs))

    inverted = {
        "alpha": (1, 2, 3, 4),
        "beta": (5, 6, 7, 8),
        "gamma": (1, 2, 5, 6),
        "delta": (1, 3, 5, 7),
    }
    for item, (g, inv) in enumerate(inverted.items(), start=4):
        s = _SYMBOL[g]
        for i in range(1, DIM + 1):
            t = f"tau{i}"
            if i in inv:
                rel.append(Relation(item, f"{s}τ{i} = τ{i}⁻¹{s}", _w(g, t), _w("~" + t, g)))
            else:
                rel.append(Relation(item, f"{s}τ{i} = τ{i}{s}", _w(g, t), _w(t, g)))
    return tuple(rel)


RELATIONS: tuple[Relation, ...] = _build_relations()


@dataclass(frozen=True)
class RelationCheck:
    relation: Relation
    ok: bool
    counterexample: tuple[tuple[Fraction, ...], tuple[Fraction, ...], tuple[Fraction, ...]] | None = None


def verify_relations() -> list[RelationCheck]:
    """Each relation as an identity of lifted affine maps of R^8."""
    out: list[RelationCheck] = []
    for r in RELATIONS:
        lhs = evaluate_word(r.lhs)
        rhs = evaluate_word(r.rhs)
        if lhs == rhs:
            out.append(RelationCheck(r, True))
            continue
        point = [Fraction(0)] * DIM
        for i, (a, b) in enumerate(zip(lhs.linear, rhs.linear)):
            if a != b:
                point[i] = Fraction(1, 3)
        x = tuple(point)
        out.append(RelationCheck(r, False, (x, lhs(x), rhs(x))))
    return out


def holonomy(word: Iterable[str | tuple[str, int]]) -> Matrix:
    """Product of linear parts; translations contribute nothing."""
    return evaluate_word(word).linear_matrix()


@dataclass(frozen=True)
class GroupElement:
    word: Word
    map: TorusAffineMap

    @property
    def name(self) -> str:
        return format_word(self.word)


@functools.lru_cache(maxsize=None)
def group_elements() -> tuple[GroupElement, ...]:
    """The 16 elements of Gamma as maps of T^8, found breadth first from the identity."""
    gens = ("alpha", "beta", "gamma", "delta")
    seen: dict[TorusAffineMap, Word] = {IDENTITY: ()}
    queue: deque[TorusAffineMap] = deque([IDENTITY])
    while queue:
        cur = queue.popleft()
        for g in gens:
            nxt = compose(cur, _GENERATORS[g]).reduced()
            if nxt not in seen:
                seen[nxt] = seen[cur] + ((g, 1),)
                queue.append(nxt)
    items = sorted(seen.items(), key=lambda kv: (len(kv[1]), [GENERATOR_NAMES.index(n) for n, _ in kv[1]]))
    return tuple(GroupElement(w, m) for m, w in items)


@dataclass(frozen=True)
class FixedComponent:
    """
    A connected component of a fixed set in T^8: the constrained coordinates
    with their values in [0, 1), the rest free.
    """

    assignment: tuple[tuple[int, Fraction], ...]
    free: tuple[int, ...]

    @property
    def dimension(self) -> int:
        return len(self.free)

    def base_point(self) -> tuple[Fraction, ...]:
        p = [Fraction(0)] * DIM
        for i, v in self.assignment:
            p[i - 1] = v
        return tuple(p)

    def image(self, h: TorusAffineMap) -> FixedComponent:
        moved = tuple(
            (i, (h.linear[i - 1] * v + h.translation[i - 1]) % 1) for i, v in self.assignment
        )
        return FixedComponent(moved, self.free)

    def describe(self) -> str:
        fixed = ", ".join(f"x{i}={v}" for i, v in self.assignment)
        return f"{{{fixed}}} x T^{self.dimension}" if self.free else f"{{{fixed}}}"


def fixed_point_components(g: TorusAffineMap) -> list[FixedComponent]:
    """Components of {x in T^8 : g(x) = x}, sorted by assignment."""
    g = g.reduced()
    if not compose(g, g).is_identity_on_torus():
        raise PreconditionError("fixed_point_components needs an involution")

    free: list[int] = []
    choices: list[tuple[int, tuple[Fraction, ...]]] = []
    for i, (s, t) in enumerate(zip(g.linear, g.translation), start=1):
        if s == 1:
            if t != 0:
                return []
            free.append(i)
        else:
            choices.append((i, (t / 2, t / 2 + HALF)))

    comps = [()]
    for i, vals in choices:
        comps = [c + ((i, v),) for c in comps for v in vals]
    return sorted((FixedComponent(c, tuple(free)) for c in comps), key=lambda c: c.assignment)


def singular_elements() -> list[GroupElement]:
    return [
        e for e in group_elements() if not e.map.is_identity() and fixed_point_components(e.map)
    ]


def _orbits(components: list[FixedComponent]) -> list[list[FixedComponent]]:
    index = set(components)
    seen: set[FixedComponent] = set()
    orbits: list[list[FixedComponent]] = []
    for c in components:
        if c in seen:
            continue
        orbit = {c.image(e.map) for e in group_elements()}
        if not orbit <= index:
            raise AssertionError("residual action does not preserve the fixed set")
        seen |= orbit
        orbits.append(sorted(orbit, key=lambda x: x.assignment))
    orbits.sort(key=lambda o: o[0].assignment)
    return orbits


@dataclass(frozen=True)
class StratumType:
    elements: tuple[str, ...]
    type: str
    neighbourhood: str
    resolution: str


STRATUM_TYPES: tuple[StratumType, ...] = (
    StratumType(("α", "β"), "(ii)", "T4/{±1} x B4/{±1}", "T4/{±1} x U"),
    StratumType(("αβ",), "(iii)", "B4/{±1} x B4/{±1}", "U x U"),
    StratumType(("γ", "δ"), "(i)", "T4 x B4/{±1}", "T4 x U"),
)

ZETA = Fraction(1, 9)

CONNECTED_COMPONENTS: dict[str, tuple[int, ...]] = {
    "C1": (73,),
    "C2": (74,),
    "C3": (75,),
    "C4": (76,),
    "C5": tuple(range(1, 73)),
}


@dataclass(frozen=True)
class ElementLoci:
    element: str
    dimension: int
    count: int
    orbit_sizes: tuple[int, ...]


@dataclass(frozen=True)
class Stratum:
    index: int
    element: str
    type: str
    neighbourhood: str
    resolution: str
    members: tuple[FixedComponent, ...]

    @property
    def label(self) -> str:
        return f"S{self.index}"


@dataclass(frozen=True)
class FixedLocusCensus:
    elements: tuple[ElementLoci, ...]
    strata: tuple[Stratum, ...]

    def count_by_type(self) -> tuple[int, int, int]:
        counts = {t: sum(1 for s in self.strata if s.type == t) for t in ("(ii)", "(iii)", "(i)")}
        return counts["(ii)"], counts["(iii)"], counts["(i)"]

    def stratum(self, index: int) -> Stratum:
        return self.strata[index - 1]


@functools.lru_cache(maxsize=None)
def singular_locus_census() -> FixedLocusCensus:
    by_name = {e.name: e for e in group_elements()}
    loci: list[ElementLoci] = []
    strata: list[Stratum] = []
    for st in STRATUM_TYPES:
        for name in st.elements:
            comps = fixed_point_components(by_name[name].map)
            orbits = _orbits(comps)
            loci.append(
                ElementLoci(name, comps[0].dimension, len(comps), tuple(len(o) for o in orbits))
            )
            for orbit in orbits:
                strata.append(
                    Stratum(
                        index=len(strata) + 1,
                        element=name,
                        type=st.type,
                        neighbourhood=st.neighbourhood,
                        resolution=st.resolution,
                        members=tuple(orbit),
                    )
                )
    log.debug("census: %d strata", len(strata))
    return FixedLocusCensus(tuple(loci), tuple(strata))


def linear_parts_group_order() -> int:
    return len({e.map.linear for e in group_elements()})


def _point_json(p: Sequence[Fraction]) -> list[str]:
    return [str(x) for x in p]


def census_to_json(c: FixedLocusCensus) -> dict:
    rows = []
    for st in STRATUM_TYPES:
        members = [s for s in c.strata if s.type == st.type]
        rows.append(
            {
                "fixed_sets": [f"fix({e})" for e in st.elements],
                "type": st.type,
                "neighbourhood": st.neighbourhood,
                "resolution": st.resolution,
                "labels": f"S{members[0].index}..S{members[-1].index}",
                "count": len(members),
            }
        )
    return {
        "table": rows,
        "totals": list(c.count_by_type()),
        "zeta": rational_to_json(ZETA),
        "connected_components": {
            k: [f"T{j}" for j in v] for k, v in CONNECTED_COMPONENTS.items()
        },
        "elements": [
            {
                "element": e.element,
                "dimension": e.dimension,
                "components": e.count,
                "orbit_sizes": list(e.orbit_sizes),
            }
            for e in c.elements
        ],
        "strata": [
            {
                "label": s.label,
                "element": s.element,
                "type": s.type,
                "representative": _point_json(s.members[0].base_point()),
                "free": list(s.members[0].free),
                "size": len(s.members),
            }
            for s in c.strata
        ],
    }


def cmd_census(args: argparse.Namespace) -> int:
    cfg = resolve(args)
    c = singular_locus_census()
    write_json(census_to_json(c), cfg.out)
    ok = c.count_by_type() == (8, 64, 4)
    if not ok:
        log.error("census totals %s, expected (8, 64, 4)", c.count_by_type())
    return EXIT_OK if ok else EXIT_ASSERTION


def register_subcommands(subparsers) -> None:
    p = subparsers.add_parser("census", help="Singular-locus census of T^8/Gamma")
    p.add_argument("--out", default=None, help="Output file (default: stdout)")
    p.set_defaults(fn=cmd_census)
