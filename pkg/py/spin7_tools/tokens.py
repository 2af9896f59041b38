# py/spin7_tools/tokens.py
"""
Diagonal involutions of SO(n) as sign vectors, their printed token names,
and the "(x1, x2, x3, x4, x5)" tuple format used by the shipped appendix lists.

A sign vector is an int bitmask over coordinates 0..n-1; a set bit means the
diagonal entry is -1.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from importlib import resources
from pathlib import Path
from typing import Iterable

from .errors import ParseError
from .linalg import Matrix, diagonal, diagonal_entries, is_diagonal

TUPLE_SLOTS = ("gamma", "delta", "tau4", "tau5", "tau8")


def popcount(x: int) -> int:
    return bin(x).count("1")


def full_mask(n: int) -> int:
    return (1 << n) - 1


def is_special(bits: int) -> bool:
    """Even number of -1 entries, i.e. determinant +1."""
    return popcount(bits) % 2 == 0


def signs_to_bits(signs: Iterable[int]) -> int:
    bits = 0
    for i, s in enumerate(signs):
        if s == -1:
            bits |= 1 << i
        elif s != 1:
            raise ValueError(f"sign entries must be +-1, got {s}")
    return bits


def bits_to_signs(bits: int, n: int) -> tuple[int, ...]:
    return tuple(-1 if bits >> i & 1 else 1 for i in range(n))


def sign_matrix(bits: int, n: int) -> Matrix:
    return diagonal(bits_to_signs(bits, n))


def matrix_to_bits(m: Matrix) -> int:
    if not is_diagonal(m) or any(x not in (1, -1) for x in diagonal_entries(m)):
        raise ValueError("expected a diagonal +-1 matrix")
    return signs_to_bits(int(x) for x in diagonal_entries(m))


def _mask(n: int, minus: Iterable[int]) -> int:
    bits = 0
    for i in minus:
        bits |= 1 << (i - 1)
    return bits


@functools.lru_cache(maxsize=None)
def token_alphabet(n: int) -> dict[str, int]:
    """Named tokens for SO(3), SO(4) and SO(5); empty for other n."""
    if n == 3:
        return {"1": 0, "a": _mask(3, (2, 3)), "b": _mask(3, (1, 3)), "c": _mask(3, (1, 2))}
    if n == 4:
        base = {"1": 0, "a": _mask(4, (2, 3)), "b": _mask(4, (1, 3)), "c": _mask(4, (1, 2))}
        out = dict(base)
        for name, bits in base.items():
            out["-" + name] = bits ^ full_mask(4)
        return out
    if n == 5:
        out = {"1": 0}
        for i in range(1, 6):
            for j in range(i + 1, 6):
                out[f"a{i}{j}"] = _mask(5, (i, j))
        for k in range(1, 6):
            out[f"b{k}"] = _mask(5, (i for i in range(1, 6) if i != k))
        return out
    return {}


@functools.lru_cache(maxsize=None)
def _names_by_bits(n: int) -> dict[int, str]:
    return {bits: name for name, bits in token_alphabet(n).items()}


def format_token(bits: int, n: int) -> str:
    name = _names_by_bits(n).get(bits)
    if name is not None:
        return name
    return "(" + ",".join("-" if s < 0 else "+" for s in bits_to_signs(bits, n)) + ")"


_SIGN_STRING_RE = re.compile(r"^\((?:[+-],)*[+-]\)$")
_SO5_RE = re.compile(r"^([ab])_?\{?(\d+)\}?$")


def parse_token(text: str, n: int) -> int:
    t = text.strip()
    alphabet = token_alphabet(n)
    if t in alphabet:
        return alphabet[t]
    if n == 5:
        m = _SO5_RE.match(t)
        if m and m.group(1) + m.group(2) in alphabet:
            return alphabet[m.group(1) + m.group(2)]
    if _SIGN_STRING_RE.match(t.replace(" ", "")):
        signs = [-1 if c == "-" else 1 for c in t.replace(" ", "")[1:-1].split(",")]
        if len(signs) != n:
            raise ValueError(f"sign string {t!r} has {len(signs)} entries, expected {n}")
        bits = signs_to_bits(signs)
        if not is_special(bits):
            raise ValueError(f"sign string {t!r} has determinant -1")
        return bits
    known = ", ".join(alphabet) if alphabet else "sign strings like (-,-,+,...)"
    raise ValueError(f"unknown token {t!r} for SO({n}); expected {known}")


@dataclass(frozen=True)
class TokenTuple:
    """(gamma, delta, tau4, tau5, tau8) as sign vectors."""

    n: int
    tokens: tuple[int, int, int, int, int]

    def __post_init__(self) -> None:
        if len(self.tokens) != 5:
            raise ValueError("a token tuple has exactly 5 entries")
        limit = full_mask(self.n)
        for slot, bits in zip(TUPLE_SLOTS, self.tokens):
            if bits < 0 or bits > limit:
                raise ValueError(f"{slot}: sign vector {bits} out of range for SO({self.n})")
            if not is_special(bits):
                raise ValueError(f"{slot}: sign vector has determinant -1")

    @property
    def gamma(self) -> int:
        return self.tokens[0]

    @property
    def delta(self) -> int:
        return self.tokens[1]

    @property
    def taus(self) -> tuple[int, int, int]:
        return self.tokens[2], self.tokens[3], self.tokens[4]

    def is_admissible(self) -> bool:
        return not (self.gamma == 0 and self.delta == 0)

    def __str__(self) -> str:
        return "(" + ", ".join(format_token(b, self.n) for b in self.tokens) + ")"


def _split_tokens(inner: str) -> list[str]:
    out: list[str] = []
    depth = 0
    cur = ""
    for ch in inner:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    out.append(cur.strip())
    return out


def parse_tuple(text: str, n: int) -> TokenTuple:
    s = text.strip()
    if not (s.startswith("(") and s.endswith(")")):
        raise ValueError(f"expected '(x1, x2, x3, x4, x5)', got {s!r}")
    parts = _split_tokens(s[1:-1])
    if len(parts) != 5:
        raise ValueError(f"expected 5 tokens, got {len(parts)}")
    bits = tuple(parse_token(p, n) for p in parts)
    return TokenTuple(n, bits)  # type: ignore[arg-type]


def parse_tuple_list(text: str, n: int, *, path: str | Path | None = None) -> list[TokenTuple]:
    """One tuple per line; blank lines and '#' comments are skipped."""
    out: list[TokenTuple] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        try:
            out.append(parse_tuple(line, n))
        except ValueError as e:
            raise ParseError(str(e), path=path, line_no=line_no) from None
    return out


def load_tuple_list(path: str | Path, n: int) -> list[TokenTuple]:
    p = Path(path)
    if not p.is_file():
        raise ParseError("file not found", path=p)
    return parse_tuple_list(p.read_text(encoding="utf-8"), n, path=p)


APPENDIX_FILES = {3: "appendix_so3.txt", 4: "appendix_so4.txt"}


def shipped_appendix(n: int) -> list[TokenTuple]:
    if n not in APPENDIX_FILES:
        raise ValueError(f"no shipped list for SO({n})")
    name = APPENDIX_FILES[n]
    text = resources.files("spin7_tools").joinpath("data", name).read_text(encoding="utf-8")
    return parse_tuple_list(text, n, path=f"data/{name}")
