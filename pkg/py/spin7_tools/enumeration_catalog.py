# py/spin7_tools/enumeration_catalog.py
"""
Gauge orbits of diagonal representations (gamma, delta, tau4, tau5, tau8).

Gauge transformations by signed permutation matrices act on diagonal tokens
by permuting coordinates, so an orbit is the multiset of per-coordinate
5-bit columns

    bit 4: gamma   bit 3: delta   bit 2: tau4   bit 1: tau5   bit 0: tau8

and the sorted column tuple is the canonical key.

Certification works on the columns directly. E_pq is fixed by a token iff
the token has the same sign at p and q, so

    h0 = #{p < q : col_p == col_q}
    h1 = 0                       (alpha and beta already kill R^8 (x) g)
    h2 = #{p < q : tau bits of col_p == tau bits of col_q} - h0

since an E_pq fixed by the taus but moved by (gamma, delta) pairs with
exactly one of e1, e2, e3.
"""

from __future__ import annotations

import argparse
import logging
import math
from collections import Counter, deque
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field
from itertools import combinations, combinations_with_replacement, permutations, product
from typing import Iterable, Iterator, Sequence

from tqdm import tqdm

from .common import EXIT_ASSERTION, EXIT_OK, csv_text, progress_enabled, write_json, write_text
from .config import FORMATS, group_tag, parse_group_tag, resolve
from .errors import PreconditionError
from .linalg import Matrix, identity, matmul, to_matrix, transpose
from .orbifold_group import GENERATOR_NAMES
from .representation_certifier import CertReport, FlatRep, certify, report_from_dims
from .tokens import (
    TUPLE_SLOTS,
    TokenTuple,
    format_token,
    is_special,
    load_tuple_list,
    matrix_to_bits,
    parse_token,
    shipped_appendix,
    sign_matrix,
    token_alphabet,
)

log = logging.getLogger(__name__)

TAU_MASK = 0b00111
GD_SHIFT = 3
MAX_INCLUDE_REDUCIBLE = 6

EXPECTED_ORBITS = {3: 105, 4: 882, 5: 1785, 6: 0, 7: 4095, 8: 16383}
EXPECTED_REDUCIBLE = {2: 24}

OrbitKey = tuple[int, ...]

CSV_COLUMNS = (
    "group",
    "index",
    "gamma",
    "delta",
    "tau4",
    "tau5",
    "tau8",
    "orbit_size",
    "h0",
    "h1",
    "h2",
    "irreducible",
    "rigid",
    "unobstructed",
    "key",
)


def expand(t: TokenTuple) -> FlatRep:
    """rho(alpha) = rho(beta) = rho(tau1) = rho(tau2) = rho(tau3) = rho(tau7) = 1, rho(tau6) = rho(tau5)."""
    n = t.n
    ident = identity(n)
    g, d, t4, t5, t8 = (sign_matrix(b, n) for b in t.tokens)
    images = {name: ident for name in GENERATOR_NAMES}
    images.update(gamma=g, delta=d, tau4=t4, tau5=t5, tau6=t5, tau8=t8)
    return FlatRep(n, images)


def columns(t: TokenTuple) -> tuple[int, ...]:
    out = []
    for p in range(t.n):
        col = 0
        for bits in t.tokens:
            col = (col << 1) | (bits >> p & 1)
        out.append(col)
    return tuple(out)


def canonical_key(t: TokenTuple) -> OrbitKey:
    return tuple(sorted(columns(t)))


def tuple_from_columns(n: int, cols: Sequence[int]) -> TokenTuple:
    tokens = [0] * 5
    for p, col in enumerate(cols):
        for slot in range(5):
            if col >> (4 - slot) & 1:
                tokens[slot] |= 1 << p
    return TokenTuple(n, tuple(tokens))  # type: ignore[arg-type]


def key_to_str(key: OrbitKey) -> str:
    return ".".join(format(c, "05b") for c in key)


def orbit_size(key: OrbitKey) -> int:
    size = math.factorial(len(key))
    for m in Counter(key).values():
        size //= math.factorial(m)
    return size


def certify_columns(cols: Sequence[int]) -> tuple[int, int, int]:
    h0 = 0
    tau_fixed = 0
    for p, q in combinations(range(len(cols)), 2):
        x = cols[p] ^ cols[q]
        if x & TAU_MASK == 0:
            tau_fixed += 1
            if x == 0:
                h0 += 1
    return h0, 0, tau_fixed - h0


def certify_signs(t: TokenTuple) -> tuple[int, int, int]:
    return certify_columns(columns(t))


def _xor_all(values: Iterable[int]) -> int:
    acc = 0
    for v in values:
        acc ^= v
    return acc


def tau_multisets(n: int, *, distinct: bool) -> list[tuple[int, ...]]:
    """Sorted 3-bit tau columns whose three rows each have even parity."""
    if distinct and n > 8:
        return []
    src = combinations(range(8), n) if distinct else combinations_with_replacement(range(8), n)
    return [c for c in src if _xor_all(c) == 0]


def extend_taus(taus: Sequence[int]) -> Iterator[OrbitKey]:
    """Every admissible orbit key over one tau multiset, each exactly once."""
    groups = sorted(Counter(taus).items())
    choices = [list(combinations_with_replacement(range(4), m)) for _, m in groups]
    for pick in product(*choices):
        gd_values = [v for vals in pick for v in vals]
        if _xor_all(gd_values) != 0 or not any(gd_values):
            continue
        cols = [
            (gd << GD_SHIFT) | tau
            for (tau, _), vals in zip(groups, pick)
            for gd in vals
        ]
        yield tuple(sorted(cols))


def _scan_chunk(chunk: Sequence[tuple[int, ...]], keep_reducible: bool) -> list[tuple[OrbitKey, int, int]]:
    out = []
    for taus in chunk:
        for key in extend_taus(taus):
            h0, _, h2 = certify_columns(key)
            if h2 == 0 and (h0 == 0 or keep_reducible):
                out.append((key, h0, h2))
    return out


def _chunks(items: list, jobs: int) -> list[list]:
    if not items:
        return []
    size = max(1, math.ceil(len(items) / (jobs * 4)))
    return [items[i : i + size] for i in range(0, len(items), size)]


def scan_parallel(
    fn, items: list, jobs: int, *args, desc: str = "scan"
) -> list:
    """Run fn(chunk, *args) over deterministic chunks; results concatenated in chunk order."""
    chunks = _chunks(items, jobs)
    disable = not progress_enabled()
    if jobs <= 1 or len(chunks) <= 1:
        results = []
        for c in tqdm(chunks, desc=desc, disable=disable):
            results.append(fn(c, *args))
    else:
        results = [None] * len(chunks)
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            futs = {ex.submit(fn, c, *args): i for i, c in enumerate(chunks)}
            for fut in tqdm(as_completed(futs), total=len(futs), desc=desc, disable=disable):
                results[futs[fut]] = fut.result()
    out = []
    for r in results:
        out.extend(r)
    return out


@dataclass(frozen=True)
class OrbitRecord:
    key: OrbitKey
    representative: TokenTuple
    orbit_size: int
    report: CertReport

    @property
    def key_str(self) -> str:
        return key_to_str(self.key)


@dataclass(frozen=True)
class OrbitCatalog:
    n: int
    records: tuple[OrbitRecord, ...]
    reducible: tuple[OrbitRecord, ...] = ()
    include_reducible: bool = False

    @property
    def raw_admissible(self) -> int:
        m = 2 ** (self.n - 1)
        return m**5 - m**3

    @property
    def raw_certified(self) -> int:
        return sum(r.orbit_size for r in self.records)

    @property
    def orbit_count(self) -> int:
        return len(self.records)

    def keys(self) -> set[OrbitKey]:
        return {r.key for r in self.records}

    def by_key(self) -> dict[OrbitKey, OrbitRecord]:
        return {r.key: r for r in self.records}


def _record(n: int, key: OrbitKey, h0: int, h2: int) -> OrbitRecord:
    return OrbitRecord(key, tuple_from_columns(n, key), orbit_size(key), report_from_dims(h0, 0, h2))


def enumerate_orbits(n: int, *, include_reducible: bool = False, jobs: int = 1) -> OrbitCatalog:
    if not 2 <= n <= 12:
        raise PreconditionError(f"enumeration covers SO(2)..SO(12), got SO({n})")
    if include_reducible and n > MAX_INCLUDE_REDUCIBLE:
        raise PreconditionError(f"--include-reducible is limited to n <= {MAX_INCLUDE_REDUCIBLE}")

    taus = tau_multisets(n, distinct=not include_reducible)
    log.info("SO(%d): %d tau multisets", n, len(taus))
    found = scan_parallel(_scan_chunk, taus, jobs, include_reducible, desc=f"SO({n})")
    found.sort()

    certified = tuple(_record(n, k, h0, h2) for k, h0, h2 in found if h0 == 0)
    reducible = tuple(_record(n, k, h0, h2) for k, h0, h2 in found if h0 > 0)
    log.info("SO(%d): %d certified orbits, %d reducible", n, len(certified), len(reducible))
    return OrbitCatalog(n, certified, reducible, include_reducible)


def admissible_orbit_keys(n: int) -> list[OrbitKey]:
    return sorted(k for taus in tau_multisets(n, distinct=False) for k in extend_taus(taus))


# -- canonical forms -------------------------------------------------------


_SO3_ORDER = {"1": 0, "a": 1, "b": 2, "c": 3}

_SO5_CONFIGS = (
    ("a12", "a13", "a14"),
    ("a12", "a13", "a24"),
    ("a12", "a13", "a34"),
    ("a12", "a13", "b5"),
    ("a12", "a34", "a13"),
    ("a12", "b5", "a13"),
    ("b5", "a12", "a13"),
)

_SO7_TAUS = ("(-,-,-,-,+,+,+)", "(-,-,+,+,-,-,+)", "(+,-,-,+,+,-,-)")
_SO8_TAUS = ("(-,-,-,-,+,+,+,+)", "(-,-,+,+,-,-,+,+)", "(+,-,-,+,+,-,-,+)")


def canonical_tau_configs(n: int) -> list[tuple[int, int, int]]:
    """
    Gauge-fixed (tau4, tau5, tau8) for SO(4), SO(5), SO(7), SO(8).

    SO(4): the first tau outside {+-1} is a and the first outside {+-1, +-a}
    is b, which leaves (+-1, a, b), (a, {+-1, +-a}, b) and (a, b, anything).
    """
    if n == 4:
        al = token_alphabet(4)
        configs = [(al[s], al["a"], al["b"]) for s in ("1", "-1")]
        configs += [(al["a"], al[s], al["b"]) for s in ("1", "-1", "a", "-a")]
        configs += [(al["a"], al["b"], al[s]) for s in ("1", "-1", "a", "-a", "b", "-b", "c", "-c")]
        return configs
    if n == 5:
        return [tuple(parse_token(x, 5) for x in c) for c in _SO5_CONFIGS]  # type: ignore[misc]
    if n == 7:
        return [tuple(parse_token(x, 7) for x in _SO7_TAUS)]  # type: ignore[list-item]
    if n == 8:
        return [tuple(parse_token(x, 8) for x in _SO8_TAUS)]  # type: ignore[list-item]
    raise PreconditionError(f"no gauge-fixed tau configurations for SO({n})")


def _tau_columns(n: int, taus: Sequence[int]) -> tuple[int, ...]:
    return tuple(
        (taus[0] >> p & 1) << 2 | (taus[1] >> p & 1) << 1 | (taus[2] >> p & 1) for p in range(n)
    )


def _permute(bits: int, perm: Sequence[int]) -> int:
    """New coordinate p takes the sign of old coordinate perm[p]."""
    out = 0
    for p, q in enumerate(perm):
        if bits >> q & 1:
            out |= 1 << p
    return out


def canonical_form(t: TokenTuple) -> TokenTuple:
    n = t.n
    if n in (2, 6) or n >= 9:
        raise PreconditionError(f"SO({n}) has no certified representations to put in canonical form")
    h0, h1, h2 = certify_signs(t)
    if not t.is_admissible() or h0 or h1 or h2:
        raise PreconditionError(f"{t} is not an irreducible, rigid, unobstructed tuple")

    if n == 3:
        best = None
        for perm in permutations(range(3)):
            cand = TokenTuple(3, tuple(_permute(b, perm) for b in t.tokens))  # type: ignore[arg-type]
            rank = tuple(_SO3_ORDER[format_token(b, 3)] for b in cand.tokens)
            if best is None or rank < best[0]:
                best = (rank, cand)
        assert best is not None
        return best[1]

    cols = _tau_columns(n, t.taus)
    where = {c: p for p, c in enumerate(cols)}
    for cfg in canonical_tau_configs(n):
        target = _tau_columns(n, cfg)
        if set(target) != set(cols):
            continue
        perm = [where[c] for c in target]
        return TokenTuple(n, (_permute(t.gamma, perm), _permute(t.delta, perm), *cfg))  # type: ignore[arg-type]
    raise PreconditionError(f"no canonical tau configuration matches {t}")


# -- appendix lists ---------------------------------------------------------


@dataclass
class AppendixReport:
    n: int
    entries: int
    uncertified: list[tuple[int, str, str]] = field(default_factory=list)
    duplicates: list[tuple[int, int, str]] = field(default_factory=list)
    missing: list[tuple[str, str]] = field(default_factory=list)
    extra: list[tuple[int, str]] = field(default_factory=list)
    expected_orbits: int = 0

    @property
    def certified_ok(self) -> bool:
        return not self.uncertified

    @property
    def inequivalent_ok(self) -> bool:
        return not self.duplicates

    @property
    def complete_ok(self) -> bool:
        return not self.missing and not self.extra

    @property
    def passed(self) -> bool:
        return self.certified_ok and self.inequivalent_ok and self.complete_ok


def verify_appendix(entries: Sequence[TokenTuple], n: int, catalog: OrbitCatalog | None = None) -> AppendixReport:
    if catalog is None:
        catalog = enumerate_orbits(n)
    report = AppendixReport(n=n, entries=len(entries), expected_orbits=catalog.orbit_count)

    seen: dict[OrbitKey, int] = {}
    for i, t in enumerate(entries, start=1):
        if t.n != n:
            report.uncertified.append((i, str(t), f"tuple is for SO({t.n})"))
            continue
        r = certify(expand(t))
        reasons = [
            name
            for name, ok in (
                ("admissible", t.is_admissible()),
                ("irreducible", r.irreducible),
                ("rigid", r.rigid),
                ("unobstructed", r.unobstructed),
            )
            if not ok
        ]
        if reasons:
            report.uncertified.append((i, str(t), "not " + ", ".join(reasons)))
        key = canonical_key(t)
        if key in seen:
            report.duplicates.append((seen[key], i, key_to_str(key)))
        else:
            seen[key] = i

    known = catalog.by_key()
    for key, rec in sorted(known.items()):
        if key not in seen:
            report.missing.append((key_to_str(key), str(rec.representative)))
    for key, i in sorted(seen.items(), key=lambda kv: kv[1]):
        if key not in known:
            report.extra.append((i, str(entries[i - 1])))
    return report


# -- counting cross-checks --------------------------------------------------


@dataclass(frozen=True)
class InclusionExclusion:
    terms: tuple[tuple[str, int], ...]
    total: int
    tau_triples_generating: int
    gamma_delta_choices: int
    brute_force: int

    @property
    def orbits(self) -> int:
        return self.total // 6


def inclusion_exclusion_so3() -> InclusionExclusion:
    terms = (
        ("all", 4**5),
        ("gamma=delta=1", -(4**3)),
        ("taus in {1,a}", -(4**2 * 2**3)),
        ("taus in {1,b}", -(4**2 * 2**3)),
        ("taus in {1,c}", -(4**2 * 2**3)),
        ("gamma=delta=1, taus in {1,a}", 2**3),
        ("gamma=delta=1, taus in {1,b}", 2**3),
        ("gamma=delta=1, taus in {1,c}", 2**3),
        ("2 x taus trivial", 2 * 4**2),
        ("2 x trivial", -2),
    )
    k = token_alphabet(3)
    generating = sum(
        1
        for taus in product(k.values(), repeat=3)
        if len({b for b in taus if b}) >= 2
    )
    return InclusionExclusion(
        terms=terms,
        total=sum(v for _, v in terms),
        tau_triples_generating=generating,
        gamma_delta_choices=4**2 - 1,
        brute_force=raw_certified_count(3),
    )


def _even_masks(n: int) -> list[int]:
    return [b for b in range(1 << n) if is_special(b)]


def raw_certified_count(n: int) -> int:
    """Admissible, irreducible, unobstructed raw tuples by direct scan."""
    if n > 4:
        raise PreconditionError("direct raw scans are limited to n <= 4")
    count = 0
    for tokens in product(_even_masks(n), repeat=5):
        t = TokenTuple(n, tokens)  # type: ignore[arg-type]
        if t.is_admissible() and certify_signs(t) == (0, 0, 0):
            count += 1
    return count


def _signed_permutation_generators(n: int) -> list[Matrix]:
    gens: list[Matrix] = []
    for i in range(n - 1):
        rows = [[0] * n for _ in range(n)]
        for r in range(n):
            c = i + 1 if r == i else i if r == i + 1 else r
            rows[r][c] = -1 if r == i else 1
        gens.append(to_matrix(rows))
    for i in range(1, n):
        signs = [1] * n
        signs[0] = signs[i] = -1
        gens.append(sign_matrix(sum(1 << k for k, s in enumerate(signs) if s < 0), n))
    return gens


@dataclass(frozen=True)
class BruteForceOrbits:
    n: int
    orbits: int
    certified: int
    reducible_unobstructed: int
    raw_admissible: int


def brute_force_orbits(n: int) -> BruteForceOrbits:
    """
    Orbits of admissible raw tuples under conjugation by det +1 signed
    permutation matrices, grown breadth first from explicit matrices.
    """
    if n > 4:
        raise PreconditionError("brute-force orbit search is limited to n <= 4")
    masks = _even_masks(n)
    tables: list[dict[int, int]] = []
    for h in _signed_permutation_generators(n):
        ht = transpose(h)
        tables.append({b: matrix_to_bits(matmul(matmul(h, sign_matrix(b, n)), ht)) for b in masks})

    seen: set[tuple[int, ...]] = set()
    orbits = certified = reducible = raw = 0
    for start in product(masks, repeat=5):
        if start[0] == 0 and start[1] == 0:
            continue
        raw += 1
        if start in seen:
            continue
        orbits += 1
        seen.add(start)
        queue = deque([start])
        while queue:
            cur = queue.popleft()
            for table in tables:
                nxt = tuple(table[b] for b in cur)
                if nxt not in seen:
                    seen.add(nxt)
                    queue.append(nxt)
        h0, _, h2 = certify_signs(TokenTuple(n, start))  # type: ignore[arg-type]
        if h2 == 0:
            if h0 == 0:
                certified += 1
            else:
                reducible += 1
    return BruteForceOrbits(n, orbits, certified, reducible, raw)


def cross_check_orbits(n: int) -> dict:
    keys = admissible_orbit_keys(n)
    bf = brute_force_orbits(n)
    dims = [certify_columns(k) for k in keys]
    key_certified = sum(1 for h0, _, h2 in dims if h0 == 0 and h2 == 0)
    key_reducible = sum(1 for h0, _, h2 in dims if h0 > 0 and h2 == 0)
    out = {
        "key_orbits": len(keys),
        "brute_force_orbits": bf.orbits,
        "key_certified": key_certified,
        "brute_force_certified": bf.certified,
        "key_reducible_unobstructed": key_reducible,
        "brute_force_reducible_unobstructed": bf.reducible_unobstructed,
        "raw_admissible": bf.raw_admissible,
        "key_raw_admissible": sum(orbit_size(k) for k in keys),
    }
    out["agree"] = (
        out["key_orbits"] == out["brute_force_orbits"]
        and key_certified == bf.certified
        and key_reducible == bf.reducible_unobstructed
        and out["key_raw_admissible"] == bf.raw_admissible
    )
    if not out["agree"]:
        log.warning("SO(%d): key-based and brute-force orbit counts diverge: %s", n, out)
    return out


# -- output -----------------------------------------------------------------


def _has_canonical_form(n: int) -> bool:
    return n in (3, 4, 5, 7, 8)


def record_to_json(index: int, rec: OrbitRecord) -> dict:
    n = rec.representative.n
    r = rec.report
    out = {
        "index": index,
        "tuple": str(rec.representative),
        "tokens": {s: format_token(b, n) for s, b in zip(TUPLE_SLOTS, rec.representative.tokens)},
        "orbit_size": rec.orbit_size,
        "h0": r.h0,
        "h1": r.h1,
        "h2": r.h2,
        "irreducible": r.irreducible,
        "rigid": r.rigid,
        "unobstructed": r.unobstructed,
        "key": rec.key_str,
    }
    if r.certified and _has_canonical_form(n):
        out["canonical"] = str(canonical_form(rec.representative))
    return out


def catalog_to_json(cat: OrbitCatalog, cross_check: dict | None = None) -> dict:
    expected = EXPECTED_ORBITS.get(cat.n)
    out: dict = {
        "group": group_tag(cat.n),
        "counts": {
            "raw_admissible": cat.raw_admissible,
            "raw_certified": cat.raw_certified,
            "orbits": cat.orbit_count,
            "reducible": len(cat.reducible),
        },
        "expected_orbits": expected,
        "orbits": [record_to_json(i, r) for i, r in enumerate(cat.records, start=1)],
    }
    if cat.include_reducible:
        out["reducible"] = [record_to_json(i, r) for i, r in enumerate(cat.reducible, start=1)]
        out["expected_reducible"] = EXPECTED_REDUCIBLE.get(cat.n)
    if cross_check is not None:
        out["cross_check"] = cross_check
    return out


def catalog_to_csv(cat: OrbitCatalog) -> str:
    rows = []
    for i, rec in enumerate(list(cat.records) + list(cat.reducible), start=1):
        r = rec.report
        toks = [format_token(b, cat.n) for b in rec.representative.tokens]
        rows.append(
            [group_tag(cat.n), i, *toks, rec.orbit_size, r.h0, r.h1, r.h2,
             int(r.irreducible), int(r.rigid), int(r.unobstructed), rec.key_str]
        )
    return csv_text(CSV_COLUMNS, rows)


def catalog_matches_expected(cat: OrbitCatalog) -> bool:
    expected = EXPECTED_ORBITS.get(cat.n)
    if expected is not None and cat.orbit_count != expected:
        return False
    if cat.include_reducible:
        exp_red = EXPECTED_REDUCIBLE.get(cat.n)
        if exp_red is not None and len(cat.reducible) != exp_red:
            return False
    return True


def appendix_to_json(rep: AppendixReport) -> dict:
    return {
        "group": group_tag(rep.n),
        "entries": rep.entries,
        "expected_orbits": rep.expected_orbits,
        "checks": {
            "certified": rep.certified_ok,
            "pairwise_inequivalent": rep.inequivalent_ok,
            "complete": rep.complete_ok,
        },
        "uncertified": [{"line": i, "tuple": t, "reason": why} for i, t, why in rep.uncertified],
        "duplicates": [{"first": a, "second": b, "key": k} for a, b, k in rep.duplicates],
        "missing": [{"key": k, "representative": t} for k, t in rep.missing],
        "extra": [{"line": i, "tuple": t} for i, t in rep.extra],
        "passed": rep.passed,
    }


def cmd_enumerate(args: argparse.Namespace) -> int:
    cfg = resolve(args)
    if cfg.group is None:
        raise SystemExit("error: enumerate needs --group")
    if cfg.include_reducible and cfg.group > MAX_INCLUDE_REDUCIBLE:
        raise SystemExit(f"error: --include-reducible is limited to so2..so{MAX_INCLUDE_REDUCIBLE}")
    cat = enumerate_orbits(cfg.group, include_reducible=cfg.include_reducible, jobs=cfg.jobs)
    cross = None
    if getattr(args, "cross_check", False):
        if cfg.group > 4:
            raise SystemExit("error: --cross-check is limited to so2..so4")
        cross = cross_check_orbits(cfg.group)

    if cfg.format == "csv":
        write_text(catalog_to_csv(cat), cfg.out)
    else:
        write_json(catalog_to_json(cat, cross), cfg.out)

    ok = catalog_matches_expected(cat) and (cross is None or cross["agree"])
    if not ok:
        log.error("SO(%d): counts do not match the expected values", cfg.group)
    return EXIT_OK if ok else EXIT_ASSERTION


def cmd_verify_appendix(args: argparse.Namespace) -> int:
    cfg = resolve(args)
    if cfg.group not in (3, 4):
        raise SystemExit("error: verify-appendix needs --group so3 or so4")
    entries = load_tuple_list(cfg.input, cfg.group) if cfg.input else shipped_appendix(cfg.group)
    rep = verify_appendix(entries, cfg.group)
    write_json(appendix_to_json(rep), cfg.out)
    if not rep.passed:
        log.error(
            "appendix check failed: %d uncertified, %d duplicate, %d missing, %d extra",
            len(rep.uncertified),
            len(rep.duplicates),
            len(rep.missing),
            len(rep.extra),
        )
    return EXIT_OK if rep.passed else EXIT_ASSERTION


def register_subcommands(subparsers) -> None:
    p = subparsers.add_parser("enumerate", help="Enumerate certified gauge orbits for SO(n)")
    p.add_argument("--group", "-g", type=parse_group_tag, default=None, help="so2 .. so12")
    p.add_argument(
        "--include-reducible",
        action="store_true",
        default=None,
        help="Also list rigid, unobstructed but reducible orbits (n <= 6)",
    )
    p.add_argument("--cross-check", action="store_true", help="Brute-force orbit cross-check (n <= 4)")
    p.add_argument("--format", choices=FORMATS, default=None)
    p.add_argument("--out", default=None, help="Output file (default: stdout)")
    p.set_defaults(fn=cmd_enumerate)

    p = subparsers.add_parser("verify-appendix", help="Check a token list against the enumeration")
    p.add_argument("--group", "-g", type=parse_group_tag, default=None, help="so3 or so4")
    p.add_argument("--list", "--input", dest="input", default=None, help="Token list (default: shipped list)")
    p.add_argument("--out", default=None, help="Output file (default: stdout)")
    p.set_defaults(fn=cmd_verify_appendix)
