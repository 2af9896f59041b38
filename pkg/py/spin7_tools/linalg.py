# py/spin7_tools/linalg.py
"""
Exact rational matrices.

Matrices are tuples of row tuples of Fraction. Elimination is fraction-free
(Bareiss) on integer rows; only back substitution touches Fraction.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

Vector = tuple[Fraction, ...]
Matrix = tuple[Vector, ...]

_ZERO = Fraction(0)
_ONE = Fraction(1)


def as_fraction(x: int | str | Fraction) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a matrix entry")
    if isinstance(x, (int, str)):
        return Fraction(x)
    raise TypeError(f"unsupported matrix entry: {x!r}")


def to_matrix(rows: Iterable[Iterable[int | str | Fraction]]) -> Matrix:
    out = tuple(tuple(as_fraction(x) for x in row) for row in rows)
    if out and any(len(r) != len(out[0]) for r in out):
        raise ValueError("ragged matrix")
    return out


def identity(n: int) -> Matrix:
    return tuple(tuple(_ONE if i == j else _ZERO for j in range(n)) for i in range(n))


def diagonal(entries: Sequence[int | Fraction]) -> Matrix:
    n = len(entries)
    return tuple(
        tuple(as_fraction(entries[i]) if i == j else _ZERO for j in range(n)) for i in range(n)
    )


def diagonal_entries(m: Matrix) -> Vector:
    return tuple(m[i][i] for i in range(len(m)))


def is_diagonal(m: Matrix) -> bool:
    return all(m[i][j] == 0 for i in range(len(m)) for j in range(len(m[i])) if i != j)


def is_identity(m: Matrix) -> bool:
    return all(m[i][j] == (1 if i == j else 0) for i in range(len(m)) for j in range(len(m[i])))


def transpose(m: Matrix) -> Matrix:
    if not m:
        return ()
    return tuple(zip(*m))


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a and len(a[0]) != len(b):
        raise ValueError(f"shape mismatch: {len(a)}x{len(a[0])} * {len(b)}x?")
    bt = transpose(b)
    return tuple(tuple(sum((x * y for x, y in zip(row, col)), _ZERO) for col in bt) for row in a)


def mat_vec(a: Matrix, v: Sequence[Fraction]) -> Vector:
    return tuple(sum((x * y for x, y in zip(row, v)), _ZERO) for row in a)


def mat_power(a: Matrix, k: int) -> Matrix:
    out = identity(len(a))
    for _ in range(k):
        out = matmul(out, a)
    return out


def scale(c: int | Fraction, m: Matrix) -> Matrix:
    c = as_fraction(c)
    return tuple(tuple(c * x for x in row) for row in m)


def add(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x + y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def sub(a: Matrix, b: Matrix) -> Matrix:
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product; row index is i_a * len(b) + i_b."""
    return tuple(
        tuple(x * y for x in ra for y in rb)
        for ra in a
        for rb in b
    )


def kron_diagonal(a: Sequence[Fraction], b: Sequence[Fraction]) -> Vector:
    return tuple(x * y for x in a for y in b)


def is_orthogonal(m: Matrix) -> bool:
    n = len(m)
    if any(len(r) != n for r in m):
        return False
    return is_identity(matmul(transpose(m), m))


def _integer_rows(rows: Sequence[Sequence[Fraction]]) -> list[list[int]]:
    out: list[list[int]] = []
    for row in rows:
        den = 1
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
        out.append([int(x * den) for x in row])
    return out


def row_echelon(rows: Sequence[Sequence[Fraction]]) -> tuple[list[list[int]], list[int]]:
    """
    Fraction-free row echelon form.

    Each input row is first scaled to integers (row scaling keeps the row space).
    Returns the nonzero echelon rows and their pivot columns.
    """
    if not rows:
        return [], []
    ncols = len(rows[0])
    m = _integer_rows(rows)
    pivots: list[int] = []
    prev = 1
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        p = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if p is None:
            continue
        m[r], m[p] = m[p], m[r]
        piv = m[r][c]
        for i in range(r + 1, len(m)):
            mic = m[i][c]
            row_i = m[i]
            row_r = m[r]
            for j in range(c + 1, ncols):
                row_i[j] = (piv * row_i[j] - mic * row_r[j]) // prev
            row_i[c] = 0
        prev = piv
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rank(m: Sequence[Sequence[Fraction]]) -> int:
    return len(row_echelon(m)[1])


def determinant(m: Matrix) -> Fraction:
    n = len(m)
    if any(len(r) != n for r in m):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return _ONE
    scales = 1
    for row in m:
        den = 1
        for x in row:
            den = den * x.denominator // math.gcd(den, x.denominator)
        scales *= den
    a = _integer_rows(m)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            p = next((i for i in range(k + 1, n) if a[i][k] != 0), None)
            if p is None:
                return _ZERO
            a[k], a[p] = a[p], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return Fraction(sign * a[n - 1][n - 1], scales)


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int | None = None) -> list[Vector]:
    """Basis of {x : A x = 0}; one vector per free column, with that entry 1."""
    if ncols is None:
        if not rows:
            raise ValueError("nullspace of an empty matrix needs ncols")
        ncols = len(rows[0])
    ech, pivots = row_echelon(rows) if rows else ([], [])
    pivot_set = set(pivots)
    basis: list[Vector] = []
    for free in range(ncols):
        if free in pivot_set:
            continue
        x = [_ZERO] * ncols
        x[free] = _ONE
        for r in range(len(pivots) - 1, -1, -1):
            pc = pivots[r]
            s = sum((ech[r][j] * x[j] for j in range(pc + 1, ncols)), _ZERO)
            x[pc] = -s / ech[r][pc]
        basis.append(tuple(x))
    return basis


def _unit(d: int, i: int) -> Vector:
    return tuple(_ONE if k == i else _ZERO for k in range(d))


def fixed_subspace(mats: Sequence[Matrix], dim: int | None = None) -> tuple[int, list[Vector]]:
    """
    Common fixed vectors of a list of square matrices, i.e. the intersection of
    ker(M - I).

    Diagonal matrices only ever cut the standard basis down; they are applied
    first without elimination. Remaining matrices restrict the current basis one
    at a time.
    """
    if not mats:
        if dim is None:
            raise ValueError("fixed_subspace of no matrices needs dim")
        return dim, [_unit(dim, i) for i in range(dim)]

    d = len(mats[0])
    if dim is not None and dim != d:
        raise ValueError(f"size mismatch: dim={dim}, matrix is {d}x{d}")
    for m in mats:
        if len(m) != d or any(len(r) != d for r in m):
            raise ValueError(f"size mismatch: expected {d}x{d} matrices")

    diag = [m for m in mats if is_diagonal(m)]
    other = [m for m in mats if not is_diagonal(m)]

    keep = [i for i in range(d) if all(m[i][i] == 1 for m in diag)]
    basis = [_unit(d, i) for i in keep]

    for m in other:
        if not basis:
            break
        if is_identity(m):
            continue
        images = [tuple(y - x for y, x in zip(mat_vec(m, b), b)) for b in basis]
        a_rows = [[images[j][i] for j in range(len(basis))] for i in range(d)]
        a_rows = [r for r in a_rows if any(r)]
        if not a_rows:
            continue
        coeffs = nullspace(a_rows, ncols=len(basis))
        basis = [
            tuple(sum((c[j] * basis[j][i] for j in range(len(basis)) if c[j]), _ZERO) for i in range(d))
            for c in coeffs
        ]
    return len(basis), basis
