"""Dense exact linear algebra over Q on lists of lists."""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

from . import rational
from .rational import Rat

Matrix = List[List[Rat]]


def identity(n: int) -> Matrix:
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def transpose(a: Sequence[Sequence[Rat]]) -> Matrix:
    return [list(col) for col in zip(*a)] if a else []


def matmul(a: Sequence[Sequence[Rat]], b: Sequence[Sequence[Rat]]) -> Matrix:
    bt = transpose(b)
    return [[rational.normalize(sum(x * y for x, y in zip(row, col))) for col in bt] for row in a]


def matvec(a: Sequence[Sequence[Rat]], v: Sequence[Rat]) -> List[Rat]:
    return [rational.normalize(sum(x * y for x, y in zip(row, v))) for row in a]


def rref(a: Sequence[Sequence[Rat]], ncols: int = None) -> Tuple[Matrix, List[int]]:
    """Reduced row echelon form and pivot columns."""
    rows = [[Fraction(x) for x in row] for row in a]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots: List[int] = []
    r = 0
    for col in range(ncols):
        if r == len(rows):
            break
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        inv = 1 / rows[r][col]
        rows[r] = [x * inv for x in rows[r]]
        prow = rows[r]
        nz = [j for j in range(col, ncols) if prow[j] != 0]
        for i in range(len(rows)):
            if i != r:
                f = rows[i][col]
                if f != 0:
                    row = rows[i]
                    for j in nz:
                        row[j] -= f * prow[j]
        pivots.append(col)
        r += 1
    out = [[rational.normalize(x) for x in row] for row in rows[:r]]
    return out, pivots


def rank(a: Sequence[Sequence[Rat]]) -> int:
    """Rank by fraction-free elimination on a copy (integer-friendly)."""
    rows = [list(row) for row in a if any(row)]
    if not rows:
        return 0
    ncols = len(rows[0])
    r = 0
    prev = 1
    for col in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][col] != 0), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        p = rows[r][col]
        for i in range(r + 1, len(rows)):
            f = rows[i][col]
            rows[i] = [rational.div(p * x - f * y, prev) for x, y in zip(rows[i], rows[r])]
        prev = p
        r += 1
        if r == len(rows):
            break
    return r


def nullspace(a: Sequence[Sequence[Rat]], ncols: int) -> List[List[Rat]]:
    """Basis of ``{v : a v = 0}``, one vector per free column, in column order.

    Each basis vector has a 1 in its free column and zeros in the other free
    columns (the reduced-echelon basis).
    """
    red, pivots = rref(a, ncols) if a else ([], [])
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v: List[Rat] = [0] * ncols
        v[free] = 1
        for row, pc in zip(red, pivots):
            v[pc] = rational.normalize(-row[free])
        basis.append(v)
    return basis


def inverse(a: Sequence[Sequence[Rat]]) -> Matrix:
    n = len(a)
    aug = [list(row) + ident for row, ident in zip(a, identity(n))]
    red, pivots = rref(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("matrix is singular")
    return [row[n:] for row in red]


def det(a: Sequence[Sequence[Rat]]) -> Rat:
    """Determinant by Bareiss elimination."""
    m = [list(row) for row in a]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k] != 0), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = rational.div(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
        prev = m[k][k]
    return rational.normalize(sign * m[n - 1][n - 1])


def echelon_basis(vectors: Sequence[Sequence[Rat]], n: int) -> Matrix:
    """Reduced row echelon basis of the span of ``vectors``."""
    red, _ = rref(list(vectors), n) if vectors else ([], [])
    return red


def complete_basis(vectors: Sequence[Sequence[Rat]], n: int) -> Matrix:
    """Extend independent ``vectors`` to a basis of Q^n with unit vectors, smallest index first."""
    basis = [list(v) for v in vectors]
    for i in range(n):
        if len(basis) == n:
            break
        e = [1 if j == i else 0 for j in range(n)]
        if rank(basis + [e]) > len(basis):
            basis.append(e)
    return basis
