"""Worked examples used by the test suite and by ``qtrans paper-examples``.

Each constructor returns plain library objects; nothing here runs checks.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import List

from .core.expr import parse, parse_x
from .core.matrix import PolyMap, gradient
from .core.poly import Poly


def ternary_form() -> Poly:
    """``p = x1^2 x3 + x1 x2 x4 + x2^2 x5`` in five variables."""
    return parse_x("x1^2*x3 + x1*x2*x4 + x2^2*x5", 5)


def power_of_ternary_form(r: int = 2) -> Poly:
    """``h = p^r``, whose gradient satisfies ``y3 y5 - y4^2 = 0``."""
    return ternary_form() ** r


def ternary_relation() -> Poly:
    return parse("y3*y5 - y4^2", [f"y{i}" for i in range(1, 6)])


def ternary_qt(r: int = 2) -> PolyMap:
    """``r p^{r-1} (0, 0, x2^2, -2 x1 x2, x1^2)``."""
    p = ternary_form()
    base = PolyMap.parse("0; 0; x2^2; -2*x1*x2; x1^2", 5)
    return base.scale(p ** (r - 1) * r)


@dataclass(frozen=True)
class PairedSquares:
    """``h = sum_i (A x_{2i-1} - B x_{2i})^2`` together with its map ``H``.

    ``A`` and ``B`` may be constants or polynomials; ``R`` is scaled by
    ``4AB`` so that it stays polynomial in ``y`` when ``A, B`` are constants.
    """

    n: int
    A: Poly
    B: Poly
    h: Poly
    G: PolyMap
    H: PolyMap

    def scaled_relation_value(self) -> Poly:
        """``B^2 (G_1^2 + G_3^2 + ..) - A^2 (G_2^2 + G_4^2 + ..)``, which must vanish."""
        odd = sum((self.G[i] ** 2 for i in range(0, self.n, 2)), Poly.zero(self.n))
        even = sum((self.G[i] ** 2 for i in range(1, self.n, 2)), Poly.zero(self.n))
        return self.B ** 2 * odd - self.A ** 2 * even

    def relation(self) -> Poly:
        """``R = (B^2 sum y_odd^2 - A^2 sum y_even^2) / (4AB)`` for constant ``A, B``."""
        if not (self.A.is_constant and self.B.is_constant):
            raise ValueError("R has polynomial coefficients unless A and B are constants")
        A, B = self.A.constant_term(), self.B.constant_term()
        ys = Poly.variables(self.n)
        R = sum((y ** 2 * B ** 2 for y in ys[0::2]), Poly.zero(self.n)) - sum(
            (y ** 2 * A ** 2 for y in ys[1::2]), Poly.zero(self.n)
        )
        return R / (4 * A * B)


def paired_squares(n: int = 6, A=None, B=None) -> PairedSquares:
    """Build the paired-squares example; ``A, B`` default to ``1``."""
    if n < 2 or n % 2:
        raise ValueError("n must be even and positive")
    A = Poly.const(n, 1) if A is None else (A if isinstance(A, Poly) else Poly.const(n, A))
    B = Poly.const(n, 1) if B is None else (B if isinstance(B, Poly) else Poly.const(n, B))
    xs = Poly.variables(n)
    forms = [A * xs[2 * i] - B * xs[2 * i + 1] for i in range(n // 2)]
    h = sum((f ** 2 for f in forms), Poly.zero(n))
    # gradient with A, B held constant, then specialized
    G = PolyMap([(A * f).scale(2) if j == 0 else (B * f).scale(-2) for f in forms for j in (0, 1)], n)
    H = PolyMap([B * f if j == 0 else A * f for f in forms for j in (0, 1)], n)
    return PairedSquares(n, A, B, h, G, H)


def paired_squares_polynomial(n: int = 6) -> PairedSquares:
    """Paired squares with ``A = x1 x4 - x2 x3`` and ``B = x3 x6 - x4 x5``."""
    return paired_squares(n, parse_x("x1*x4 - x2*x3", n), parse_x("x3*x6 - x4*x5", n))


def cubic_orbit_qt() -> PolyMap:
    """``H = (0, x1, x1^2, x1^3)``."""
    return PolyMap.parse("0; x1; x1^2; x1^3", 4)


def cubic_orbit_invariant() -> Poly:
    """``f = x1 + x2 x4 - x3^2``, of quasi-degree one for :func:`cubic_orbit_qt`."""
    return parse_x("x1 + x2*x4 - x3^2", 4)


def cubic_orbit_conjugators():
    """``F = (f, x2, x3, x4)`` and its inverse ``G = (2x1 - f, x2, x3, x4)``."""
    f = cubic_orbit_invariant()
    x1 = Poly.var(4, 0)
    xs = Poly.variables(4)
    F = PolyMap([f] + xs[1:], 4)
    G = PolyMap([x1 * 2 - f] + xs[1:], 4)
    return F, G


def cubic_orbit_conjugate() -> PolyMap:
    """Expected conjugate ``(-(f^3 x2 - 2 f^2 x3 + f x4), f, f^2, f^3)``."""
    f = cubic_orbit_invariant()
    x2, x3, x4 = Poly.variables(4)[1:]
    return PolyMap([-(f ** 3 * x2 - f ** 2 * x3 * 2 + f * x4), f, f ** 2, f ** 3], 4)


def bilinear_pair() -> Poly:
    """``h = x3 x4`` in four variables."""
    return parse_x("x3*x4", 4)


def bilinear_nonminimal_relation() -> Poly:
    """``y1 y3 + y2 y4``, which vanishes on ``∇(x3 x4)`` but is not of minimal degree."""
    return parse("y1*y3 + y2*y4", ["y1", "y2", "y3", "y4"])


def bilinear_nonminimal_qt() -> PolyMap:
    return PolyMap.parse("x4; x3; 0; 0", 4)


def seed_quasi_translations() -> List[PolyMap]:
    """Small hand-checked quasi-translations used to seed generated corpora."""
    return [
        cubic_orbit_qt(),
        ternary_qt(2),
        PolyMap.parse("0; x1^2", 2),
        PolyMap.parse("0; x1*x2 - x3; x1*(x1*x2 - x3)", 3),
        PolyMap.parse("0; 0; x2*(x1*x3 - x2*x4); x1*(x1*x3 - x2*x4)", 4),
        PolyMap.parse("0; x1^2 + 1; x1", 3),
        paired_squares(6).H,
    ]


__all__ = [
    "PairedSquares",
    "bilinear_nonminimal_qt",
    "bilinear_nonminimal_relation",
    "bilinear_pair",
    "cubic_orbit_conjugate",
    "cubic_orbit_conjugators",
    "cubic_orbit_invariant",
    "cubic_orbit_qt",
    "paired_squares",
    "paired_squares_polynomial",
    "power_of_ternary_form",
    "seed_quasi_translations",
    "ternary_form",
    "ternary_qt",
    "ternary_relation",
]
