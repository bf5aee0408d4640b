"""Polynomial maps, polynomial matrices, and their exact linear algebra."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from ..errors import DimensionError
from . import linalg, rational
from .expr import default_names, format_poly, parse
from .poly import Poly, poly_sum

#: Half-width of the integer box used for randomized evaluation.
RANDOM_BOUND = 10 ** 6
#: Independent evaluation points per randomized rank computation.
RANDOM_TRIALS = 3


class PolyMap:
    """Column vector of ``m >= 1`` polynomials sharing one arity."""

    __slots__ = ("arity", "components", "_hash")

    def __init__(self, components: Sequence[Poly], arity: Optional[int] = None):
        components = tuple(components)
        if not components:
            raise DimensionError("a polynomial map needs at least one component")
        if arity is None:
            arity = components[0].arity
        for p in components:
            if not isinstance(p, Poly):
                raise TypeError(f"components must be Poly, got {type(p).__name__}")
            if p.arity != arity:
                raise DimensionError("components have mixed arities")
        self.arity = arity
        self.components = components
        self._hash = None

    @classmethod
    def identity(cls, n: int) -> "PolyMap":
        return cls(Poly.variables(n), n)

    @classmethod
    def zero(cls, m: int, arity: int) -> "PolyMap":
        return cls([Poly.zero(arity)] * m, arity)

    @classmethod
    def constant(cls, values: Sequence, arity: int) -> "PolyMap":
        return cls([Poly.const(arity, v) for v in values], arity)

    @classmethod
    def parse(cls, text: str, arity: Optional[int] = None, names: Optional[Sequence[str]] = None) -> "PolyMap":
        """Parse semicolon-separated components.

        Without ``names`` the variables are ``x1..xN`` where ``N`` is ``arity``
        or, if omitted, the larger of the highest index mentioned and the
        number of components (so square maps need no explicit arity).
        """
        pieces = [s for s in text.split(";")]
        if names is None:
            if arity is None:
                import re

                idx = [int(k) for k in re.findall(r"\bx(\d+)\b", text)]
                arity = max(idx + [len(pieces)])
            names = default_names(arity)
        return cls([parse(s, names) for s in pieces], len(names))

    def __len__(self) -> int:
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMap):
            return NotImplemented
        return self.arity == other.arity and self.components == other.components

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.arity, self.components))
        return self._hash

    def _check(self, other: "PolyMap") -> None:
        if (other.arity, len(other)) != (self.arity, len(self)):
            raise DimensionError("polynomial maps have different shapes")

    def __add__(self, other: "PolyMap") -> "PolyMap":
        self._check(other)
        return PolyMap([a + b for a, b in zip(self, other)], self.arity)

    def __sub__(self, other: "PolyMap") -> "PolyMap":
        self._check(other)
        return PolyMap([a - b for a, b in zip(self, other)], self.arity)

    def __neg__(self) -> "PolyMap":
        return PolyMap([-a for a in self], self.arity)

    def scale(self, factor: Union[Poly, int, Fraction]) -> "PolyMap":
        """Multiply every component by a scalar or by a polynomial."""
        return PolyMap([a * factor for a in self], self.arity)

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero for p in self)

    def degree(self):
        return max(p.degree() for p in self)

    def is_square(self) -> bool:
        return len(self) == self.arity

    def compose(self, inner: "PolyMap") -> "PolyMap":
        """``self ∘ inner``: substitute ``inner`` for the variables of ``self``."""
        if len(inner) != self.arity:
            raise DimensionError(
                f"cannot compose: outer map has arity {self.arity}, inner map has {len(inner)} components"
            )
        return PolyMap([p.substitute(inner.components) for p in self], inner.arity)

    def __call__(self, inner: "PolyMap") -> "PolyMap":
        return self.compose(inner)

    def evaluate(self, point: Sequence) -> List:
        return [p.evaluate(point) for p in self]

    def jacobian(self) -> "PolyMatrix":
        return PolyMatrix([[p.derive(j) for j in range(self.arity)] for p in self])

    def extend(self, extra: int = 1) -> "PolyMap":
        return PolyMap([p.extend(extra) for p in self], self.arity + extra)

    def to_strings(self, names: Optional[Sequence[str]] = None) -> List[str]:
        return [format_poly(p, names) for p in self]

    def to_string(self, names: Optional[Sequence[str]] = None) -> str:
        return "; ".join(self.to_strings(names))

    def __str__(self) -> str:
        return "(" + ", ".join(self.to_strings()) + ")"

    def __repr__(self) -> str:
        return f"PolyMap({self.to_string()!r})"


class PolyMatrix:
    """Rectangular matrix of polynomials of a common arity."""

    __slots__ = ("rows", "cols", "arity", "entries")

    def __init__(self, entries: Sequence[Sequence[Poly]], arity: Optional[int] = None):
        entries = tuple(tuple(row) for row in entries)
        if not entries or not entries[0]:
            raise DimensionError("a matrix needs at least one row and one column")
        cols = len(entries[0])
        if any(len(row) != cols for row in entries):
            raise DimensionError("ragged matrix rows")
        if arity is None:
            arity = entries[0][0].arity
        if any(p.arity != arity for row in entries for p in row):
            raise DimensionError("matrix entries have mixed arities")
        self.rows = len(entries)
        self.cols = cols
        self.arity = arity
        self.entries = entries

    @classmethod
    def identity(cls, n: int, arity: int) -> "PolyMatrix":
        return cls([[Poly.const(arity, int(i == j)) for j in range(n)] for i in range(n)], arity)

    @classmethod
    def zeros(cls, rows: int, cols: int, arity: int) -> "PolyMatrix":
        return cls([[Poly.zero(arity)] * cols for _ in range(rows)], arity)

    @classmethod
    def from_constants(cls, values: Sequence[Sequence], arity: int) -> "PolyMatrix":
        return cls([[Poly.const(arity, v) for v in row] for row in values], arity)

    def __getitem__(self, ij: Tuple[int, int]) -> Poly:
        i, j = ij
        return self.entries[i][j]

    def row(self, i: int) -> Tuple[Poly, ...]:
        return self.entries[i]

    def column(self, j: int) -> Tuple[Poly, ...]:
        return tuple(row[j] for row in self.entries)

    @property
    def shape(self) -> Tuple[int, int]:
        return self.rows, self.cols

    def __eq__(self, other) -> bool:
        if not isinstance(other, PolyMatrix):
            return NotImplemented
        return self.arity == other.arity and self.entries == other.entries

    def __hash__(self) -> int:
        return hash((self.arity, self.entries))

    @property
    def is_zero(self) -> bool:
        return all(p.is_zero for row in self.entries for p in row)

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self.entries[i][j] == self.entries[j][i] for i in range(self.rows) for j in range(i)
        )

    def transpose(self) -> "PolyMatrix":
        return PolyMatrix(list(zip(*self.entries)), self.arity)

    @property
    def T(self) -> "PolyMatrix":
        return self.transpose()

    def __add__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise DimensionError("matrix shapes differ")
        return PolyMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.arity)

    def __sub__(self, other: "PolyMatrix") -> "PolyMatrix":
        if self.shape != other.shape:
            raise DimensionError("matrix shapes differ")
        return PolyMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.arity)

    def scale(self, factor) -> "PolyMatrix":
        return PolyMatrix([[a * factor for a in row] for row in self.entries], self.arity)

    def __matmul__(self, other):
        return matmul(self, other)

    def __pow__(self, k: int) -> "PolyMatrix":
        if self.rows != self.cols:
            raise DimensionError("only square matrices have powers")
        result = PolyMatrix.identity(self.rows, self.arity)
        for _ in range(k):
            result = result @ self
        return result

    def substitute(self, values: Sequence[Poly]) -> "PolyMatrix":
        return PolyMatrix([[p.substitute(values) for p in row] for row in self.entries])

    def evaluate(self, point: Sequence) -> List[List]:
        return [[p.evaluate(point) for p in row] for row in self.entries]

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "PolyMatrix":
        return PolyMatrix([[self.entries[i][j] for j in cols] for i in rows], self.arity)

    def max_degree(self) -> int:
        return max((p.degree() for row in self.entries for p in row if not p.is_zero), default=0)

    def __str__(self) -> str:
        return "[" + "; ".join(", ".join(str(p) for p in row) for row in self.entries) + "]"

    __repr__ = __str__


# -- free-function forms ---------------------------------------------------


def compose(outer: PolyMap, inner: PolyMap) -> PolyMap:
    return outer.compose(inner)


def jacobian(F: PolyMap) -> PolyMatrix:
    return F.jacobian()


def gradient(h: Poly) -> PolyMap:
    """The transpose of the Jacobian row of ``h``, as a map."""
    if h.arity == 0:
        raise DimensionError("gradient of an arity-0 polynomial is empty")
    return PolyMap([h.derive(j) for j in range(h.arity)], h.arity)


def hessian(h: Poly) -> PolyMatrix:
    return gradient(h).jacobian()


def matmul(a: PolyMatrix, b: Union[PolyMatrix, PolyMap]) -> Union[PolyMatrix, PolyMap]:
    """Matrix product; a :class:`PolyMap` right factor is treated as a column."""
    if isinstance(b, PolyMap):
        if a.cols != len(b):
            raise DimensionError(f"cannot multiply {a.rows}x{a.cols} matrix by {len(b)}-vector")
        if a.arity != b.arity:
            raise DimensionError("arity mismatch")
        return PolyMap([poly_sum((x * y for x, y in zip(row, b)), a.arity) for row in a.entries], a.arity)
    if a.cols != b.rows:
        raise DimensionError(f"cannot multiply {a.rows}x{a.cols} by {b.rows}x{b.cols}")
    if a.arity != b.arity:
        raise DimensionError("arity mismatch")
    bt = list(zip(*b.entries))
    return PolyMatrix(
        [[poly_sum((x * y for x, y in zip(row, col)), a.arity) for col in bt] for row in a.entries],
        a.arity,
    )


def row_times_matrix(v: Sequence[Poly], m: PolyMatrix) -> List[Poly]:
    """``v^t M`` for a row vector ``v``."""
    if len(v) != m.rows:
        raise DimensionError("row vector length does not match matrix rows")
    return [poly_sum((x * y for x, y in zip(v, col)), m.arity) for col in zip(*m.entries)]


def det_cofactor(m: PolyMatrix) -> Poly:
    """Leibniz/cofactor determinant.  Used directly for sizes up to 3."""
    if m.rows != m.cols:
        raise DimensionError("determinant of a non-square matrix")
    n = m.rows
    e = m.entries
    if n == 1:
        return e[0][0]
    if n == 2:
        return e[0][0] * e[1][1] - e[0][1] * e[1][0]
    total = Poly.zero(m.arity)
    for j in range(n):
        if e[0][j].is_zero:
            continue
        minor = PolyMatrix([row[:j] + row[j + 1:] for row in e[1:]], m.arity)
        term = e[0][j] * det_cofactor(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def det_bareiss(m: PolyMatrix) -> Poly:
    """Fraction-free Gaussian elimination with exact polynomial division."""
    if m.rows != m.cols:
        raise DimensionError("determinant of a non-square matrix")
    a = [list(row) for row in m.entries]
    n = m.rows
    sign = 1
    prev = Poly.one(m.arity)
    for k in range(n - 1):
        if a[k][k].is_zero:
            swap = next((i for i in range(k + 1, n) if not a[i][k].is_zero), None)
            if swap is None:
                return Poly.zero(m.arity)
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        pivot = a[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]).exquo(prev)
        prev = pivot
    result = a[n - 1][n - 1]
    return result if sign > 0 else -result


def det(m: PolyMatrix) -> Poly:
    if m.rows != m.cols:
        raise DimensionError("determinant of a non-square matrix")
    if m.rows <= 3:
        return det_cofactor(m)
    return det_bareiss(m)


# -- rank ------------------------------------------------------------------


@dataclass(frozen=True)
class RankReport:
    """Outcome of a rank computation.

    ``failure_bound`` is the Schwartz-Zippel bound on the probability that the
    randomized estimate is too low; it is 0 for a certified result.
    ``pivot_rows``/``pivot_cols`` locate a nonzero ``rank x rank`` minor, which
    is stored in ``minor`` when certified.
    """

    rank: int
    mode: str
    failure_bound: Fraction
    pivot_rows: Tuple[int, ...]
    pivot_cols: Tuple[int, ...]
    minor: Optional[Poly] = None


def _random_point(rng: random.Random, arity: int) -> List[int]:
    return [rng.randint(-RANDOM_BOUND, RANDOM_BOUND) for _ in range(arity)]


def _numeric_pivots(values: List[List]) -> Tuple[List[int], List[int]]:
    """Complete-pivoting elimination order (rows, cols) of a numeric matrix."""
    a = [[Fraction(x) for x in row] for row in values]
    rows_left = list(range(len(a)))
    cols_left = list(range(len(a[0]) if a else 0))
    prow, pcol = [], []
    while rows_left and cols_left:
        found = next(((i, j) for i in rows_left for j in cols_left if a[i][j] != 0), None)
        if found is None:
            break
        i, j = found
        prow.append(i)
        pcol.append(j)
        rows_left.remove(i)
        cols_left.remove(j)
        for r in rows_left:
            f = a[r][j] / a[i][j]
            if f:
                for c in cols_left:
                    a[r][c] -= f * a[i][c]
    return prow, pcol


def rank_report(m: PolyMatrix, mode: str = "randomized", seed: int = 0) -> RankReport:
    """Rank of ``m`` over the rational function field.

    ``randomized`` evaluates at ``RANDOM_TRIALS`` uniformly random integer
    points and keeps the largest numeric rank; the numeric rank never exceeds
    the true rank, so only an underestimate is possible.  ``certified`` then
    runs symbolic fraction-free elimination in the numerically chosen pivot
    order: the last pivot is a nonzero ``r x r`` minor, and the remaining
    entries are the bordering ``(r+1) x (r+1)`` minors, whose vanishing
    certifies the rank.
    """
    if mode not in ("randomized", "certified"):
        raise ValueError(f"unknown rank mode {mode!r}")
    rng = random.Random(seed)
    best_rank, best_rows, best_cols = -1, [], []
    for _ in range(RANDOM_TRIALS):
        values = m.evaluate(_random_point(rng, m.arity))
        prow, pcol = _numeric_pivots(values)
        if len(prow) > best_rank:
            best_rank, best_rows, best_cols = len(prow), prow, pcol
    if mode == "randomized":
        maxdeg = m.max_degree()
        bound = Fraction(min(m.rows, m.cols) * maxdeg, 2 * RANDOM_BOUND + 1) ** RANDOM_TRIALS
        if best_rank == min(m.rows, m.cols):
            bound = Fraction(0)
        return RankReport(best_rank, mode, min(bound, Fraction(1)), tuple(best_rows), tuple(best_cols))
    return _certify(m, best_rows, best_cols)


def _certify(m: PolyMatrix, prow: List[int], pcol: List[int]) -> RankReport:
    rows = prow + [i for i in range(m.rows) if i not in prow]
    cols = pcol + [j for j in range(m.cols) if j not in pcol]
    a = [[m.entries[i][j] for j in cols] for i in rows]
    nr, nc = m.rows, m.cols
    prev = Poly.one(m.arity)
    k = 0
    while k < min(nr, nc):
        if a[k][k].is_zero:
            # the numeric guess ran out; look for any nonzero bordering minor
            hit = next(((i, j) for i in range(k, nr) for j in range(k, nc) if not a[i][j].is_zero), None)
            if hit is None:
                break
            i, j = hit
            a[k], a[i] = a[i], a[k]
            rows[k], rows[i] = rows[i], rows[k]
            for row in a:
                row[k], row[j] = row[j], row[k]
            cols[k], cols[j] = cols[j], cols[k]
        pivot = a[k][k]
        for i in range(k + 1, nr):
            for j in range(k + 1, nc):
                a[i][j] = (a[i][j] * pivot - a[i][k] * a[k][j]).exquo(prev)
        prev = pivot
        k += 1
    minor = prev if k else Poly.one(m.arity)
    return RankReport(k, "certified", Fraction(0), tuple(rows[:k]), tuple(cols[:k]), minor)


def rank(m: PolyMatrix, mode: str = "randomized", seed: int = 0) -> int:
    return rank_report(m, mode, seed).rank


def constant_matrix(m: PolyMatrix) -> List[List]:
    """Entries of a constant matrix as rationals."""
    out = []
    for row in m.entries:
        if not all(p.is_constant() for p in row):
            raise ValueError("matrix is not constant")
        out.append([p.constant_term() for p in row])
    return out


def linear_map(T: Sequence[Sequence], shift: Optional[Sequence] = None) -> PolyMap:
    """The affine map ``x -> T x + shift`` as a :class:`PolyMap`."""
    n = len(T[0])
    xs = Poly.variables(n)
    shift = shift if shift is not None else [0] * len(T)
    comps = []
    for row, c in zip(T, shift):
        terms = {}
        for j, v in enumerate(row):
            v = rational.rat(v)
            if v:
                e = [0] * n
                e[j] = 1
                terms[tuple(e)] = v
        if rational.rat(c):
            terms[(0,) * n] = rational.rat(c)
        comps.append(Poly(n, terms))
    return PolyMap(comps, n)


def apply_constant(T: Sequence[Sequence], F: PolyMap) -> PolyMap:
    """``T · F`` for a constant rational matrix ``T``."""
    if len(T[0]) != len(F):
        raise DimensionError("constant matrix does not match map length")
    return PolyMap(
        [poly_sum((f.scale(v) for v, f in zip(row, F) if v), F.arity) for row in T], F.arity
    )


__all__ = [
    "PolyMap",
    "PolyMatrix",
    "RankReport",
    "compose",
    "jacobian",
    "gradient",
    "hessian",
    "matmul",
    "row_times_matrix",
    "det",
    "det_bareiss",
    "det_cofactor",
    "rank",
    "rank_report",
    "constant_matrix",
    "linear_map",
    "apply_constant",
    "linalg",
]
