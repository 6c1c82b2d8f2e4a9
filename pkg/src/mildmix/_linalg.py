"""Small exact linear algebra over int / Fraction entries.

Matrices are tuples of row tuples.  Everything here is exact; nothing
is ever converted to float.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

Matrix = tuple


def identity(d: int) -> Matrix:
    return tuple(tuple(1 if i == j else 0 for j in range(d)) for i in range(d))


def transpose(m: Sequence[Sequence]) -> Matrix:
    return tuple(zip(*m)) if m else ()


def matmul(a: Sequence[Sequence], b: Sequence[Sequence]) -> Matrix:
    bt = transpose(b)
    return tuple(
        tuple(_dot(row, col) for col in bt)
        for row in a
    )


def matvec(m: Sequence[Sequence], v: Sequence):
    return tuple(_dot(row, v) for row in m)


def _dot(row, v):
    total = 0
    for x, y in zip(row, v):
        if x:
            total = total + x * y
    return total


def det(m: Sequence[Sequence]) -> Fraction:
    """Determinant by fraction-exact Gaussian elimination."""
    a = [[Fraction(x) for x in row] for row in m]
    n = len(a)
    sign = 1
    result = Fraction(1)
    for c in range(n):
        p = next((r for r in range(c, n) if a[r][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            a[c], a[p] = a[p], a[c]
            sign = -sign
        piv = a[c][c]
        result *= piv
        for r in range(c + 1, n):
            f = a[r][c] / piv
            if f:
                a[r] = [x - f * y for x, y in zip(a[r], a[c])]
    return sign * result


def row_reduce(m: Sequence[Sequence]) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [[Fraction(x) for x in row] for row in m]
    rows = len(a)
    cols = len(a[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        p = next((i for i in range(r, rows) if a[i][c] != 0), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        piv = a[r][c]
        a[r] = [x / piv for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
        if r == rows:
            break
    return a, pivots


def rank(m: Sequence[Sequence]) -> int:
    if not m:
        return 0
    return len(row_reduce(m)[1])


def solve(m: Sequence[Sequence], rhs: Sequence) -> tuple[Fraction, ...] | None:
    """Return one exact solution of ``m x = rhs``, or None if inconsistent.

    Free variables are set to zero.
    """
    ncols = len(m[0])
    aug = [list(row) + [b] for row, b in zip(m, rhs)]
    red, pivots = row_reduce(aug)
    if ncols in pivots:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(red, pivots):
        x[c] = row[-1]
    return tuple(x)


def is_nonnegative_integer_matrix(m: Sequence[Sequence]) -> bool:
    return all(isinstance(x, int) and x >= 0 for row in m for x in row)
