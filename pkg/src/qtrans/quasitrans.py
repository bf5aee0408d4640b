"""Quasi-translations ``x + H``: verification, invariants, quasi-degrees,
conjugation and homogenization.

A polynomial map ``x + H`` is a quasi-translation when ``x - H`` is its
inverse.  Three equivalent tests are implemented independently:

1. ``(x - H) ∘ (x + H) = x``;
2. ``H(x + tH) = H`` with ``t`` a fresh variable;
3. ``JH · H = 0``.

Operations that need a quasi-translation as input gate on test 3, the
cheapest of the three.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .core import linalg
from .core.gcd import gcd_list
from .core.matrix import PolyMap, PolyMatrix, apply_constant, linear_map, matmul, rank
from .core.poly import MINUS_INFINITY, Poly
from .errors import DimensionError, NotQuasiTranslationError, VerificationError


@dataclass(frozen=True)
class QtReport:
    """Verdicts of the three equivalent quasi-translation tests.

    ``nilpotency_index`` is the least ``k`` with ``(JH)^k = 0`` (``None`` if
    ``(JH)^n != 0``).  ``series_identity`` records whether
    ``JH(x - tH) = sum_k t^k (JH)^(k+1)`` holds with the sum truncated at the
    nilpotency index; it is only evaluated for quasi-translations.
    """

    cond_inverse: bool
    cond_deform: bool
    cond_jhh: bool
    nilpotency_index: Optional[int] = None
    series_identity: Optional[bool] = None

    @property
    def consistent(self) -> bool:
        return self.cond_inverse == self.cond_deform == self.cond_jhh

    @property
    def is_qt(self) -> bool:
        return self.cond_inverse and self.cond_deform and self.cond_jhh


@dataclass(frozen=True)
class Deformation:
    """``f(x + tH)`` as a polynomial in ``n + 1`` variables, ``t`` last."""

    result: Poly

    @property
    def t_index(self) -> int:
        return self.result.arity - 1

    @property
    def degree(self):
        """Degree in ``t``; ``-inf`` when the deformed polynomial is zero."""
        return self.result.degree_in(self.t_index)

    def coefficients(self) -> Dict[int, Poly]:
        """``{k: coefficient of t^k}`` with coefficients in the original ``n`` variables."""
        n = self.t_index
        return {k: c.restrict(n) for k, c in self.result.coefficients_in(n).items()}

    def at_zero(self) -> Poly:
        return self.coefficients().get(0, Poly.zero(self.t_index))


@dataclass(frozen=True)
class QuasiTranslation:
    """A map ``H`` whose quasi-translation property has been checked."""

    H: PolyMap
    verified: bool
    homogeneous_degree: Optional[int] = None

    @classmethod
    def of(cls, H: PolyMap) -> "QuasiTranslation":
        _require_square(H)
        ok = matmul(H.jacobian(), H).is_zero
        return cls(H, ok, homogeneous_degree(H))


def _require_square(H: PolyMap) -> None:
    if not H.is_square():
        raise DimensionError(f"expected a square map, got {len(H)} components in {H.arity} variables")


def require_qt(H: PolyMap) -> None:
    """Raise :class:`NotQuasiTranslationError` unless ``JH · H = 0``."""
    _require_square(H)
    if not matmul(H.jacobian(), H).is_zero:
        raise NotQuasiTranslationError("map does not satisfy JH·H = 0")


def is_quasi_translation(H: PolyMap) -> bool:
    _require_square(H)
    return matmul(H.jacobian(), H).is_zero


def homogeneous_degree(H: PolyMap) -> Optional[int]:
    """Common degree of the nonzero components, ``0`` for the zero map, else ``None``."""
    degrees = set()
    for p in H:
        if p.is_zero:
            continue
        if not p.is_homogeneous():
            return None
        degrees.add(p.degree())
    if len(degrees) > 1:
        return None
    return degrees.pop() if degrees else 0


def _shifted(H: PolyMap, sign: int = 1) -> List[Poly]:
    """Components of ``x + sign·t·H`` in ``n + 1`` variables (``t`` last)."""
    n = H.arity
    xs = Poly.variables(n + 1)
    t = xs[n]
    return [xs[i] + t * H[i].extend() * sign for i in range(n)]


def _powers_until_zero(J: PolyMatrix, n: int) -> Tuple[Optional[int], List[PolyMatrix]]:
    powers = [J]
    if J.is_zero:
        return 1, powers
    for k in range(2, n + 1):
        powers.append(powers[-1] @ J)
        if powers[-1].is_zero:
            return k, powers
    return None, powers


def check_qt(H: PolyMap, extras: bool = True) -> QtReport:
    """Evaluate the three equivalent tests independently.

    With ``extras`` the nilpotency index of ``JH`` and the truncated series
    identity for ``JH(x - tH)`` are computed as well.
    """
    _require_square(H)
    n = H.arity
    x = PolyMap.identity(n)
    inverse = (x - H).compose(x + H) == x
    deform_ok = PolyMap([p.substitute(_shifted(H)) for p in H], n + 1) == H.extend()
    J = H.jacobian()
    jhh = matmul(J, H).is_zero
    if not extras:
        return QtReport(inverse, deform_ok, jhh)
    index, powers = _powers_until_zero(J, n)
    series = None
    if jhh and index is not None:
        lhs = J.substitute(_shifted(H, -1))
        t = Poly.var(n + 1, n)
        rhs = PolyMatrix.zeros(n, n, n + 1)
        for k, P in enumerate(powers[:index]):
            rhs = rhs + PolyMatrix([[p.extend() for p in row] for row in P.entries]).scale(t ** k)
        series = lhs == rhs
    return QtReport(inverse, deform_ok, jhh, index, series)


def deform(f: Poly, H: PolyMap, check: bool = True) -> Deformation:
    """``f(x + tH)`` for a quasi-translation ``x + H``."""
    if f.arity != H.arity:
        raise DimensionError("polynomial and map have different arities")
    if check:
        require_qt(H)
    return Deformation(f.substitute(_shifted(H)))


def quasi_degree(f: Poly, H: PolyMap, check: bool = True):
    """Degree in ``t`` of ``f(x + tH)``; ``-inf`` for ``f = 0``."""
    if f.is_zero:
        return MINUS_INFINITY
    return deform(f, H, check).degree


def iterate(H: PolyMap, m: int) -> PolyMap:
    """``x + mH``, cross-checked against the ``m``-fold composition of ``x + H``."""
    if m < 0:
        raise ValueError("iteration count must be non-negative")
    require_qt(H)
    n = H.arity
    x = PolyMap.identity(n)
    closed = x + H.scale(m)
    step = x + H
    power = x
    for _ in range(m):
        power = step.compose(power)
    if power != closed:
        raise VerificationError(f"{m}-fold composition differs from x + {m}H")
    return closed


def is_invariant(f: Poly, H: PolyMap) -> bool:
    """Whether ``f(x + H) = f``; all three characterizations must agree."""
    require_qt(H)
    n = H.arity
    jf_h = sum((f.derive(j) * H[j] for j in range(n)), Poly.zero(n)).is_zero
    at_one = f.substitute(list((PolyMap.identity(n) + H).components)) == f
    nu = quasi_degree(f, H, check=False)
    if not (jf_h == at_one == (nu <= 0)):
        raise VerificationError(
            f"invariance tests disagree: Jf·H=0 is {jf_h}, f(x+H)=f is {at_one}, nu(f)={nu}"
        )
    return jf_h


def strip_gcd(H: PolyMap) -> Tuple[Poly, PolyMap]:
    """Split ``H = g·H'`` with ``g`` the normalized gcd of the components.

    Verifies that ``x + H'`` is a quasi-translation, that ``g`` has
    quasi-degree 0 with respect to it, and that both maps share invariants on
    a battery of coordinate functions and components.
    """
    require_qt(H)
    if H.is_zero:
        raise ValueError("the zero map has no gcd")
    g = gcd_list(H.components)
    reduced = PolyMap([p.exquo(g) for p in H], H.arity)
    report = check_qt(reduced, extras=False)
    if not report.is_qt:
        raise VerificationError(f"stripped map is not a quasi-translation: {report}")
    nu = quasi_degree(g, reduced, check=False)
    if nu != 0:
        raise VerificationError(f"gcd has quasi-degree {nu} with respect to the stripped map")
    battery = list(Poly.variables(H.arity)) + list(reduced) + [g]
    for f in battery:
        if is_invariant(f, H) != is_invariant(f, reduced):
            raise VerificationError(f"invariant sets differ on {f}")
    return g, reduced


def linear_conjugate(H: PolyMap, T: Sequence[Sequence]) -> PolyMap:
    """``T^{-1} H(Tx)`` for an invertible constant matrix ``T``."""
    Tinv = linalg.inverse(T)
    return apply_constant(Tinv, H.compose(linear_map(T)))


def conjugate(H: PolyMap, F: PolyMap, G: PolyMap) -> PolyMap:
    """``H̃`` with ``x + H̃ = G ∘ (x + H) ∘ F`` for mutually inverse ``F``, ``G``.

    Requires every ``G_i`` to have quasi-degree at most one with respect to
    ``x + H``; ``H̃`` is then read off the ``t``-linear part of ``G(x + tH)``
    and cross-checked against the direct composition.
    """
    require_qt(H)
    n = H.arity
    for M in (F, G):
        if not M.is_square() or M.arity != n:
            raise DimensionError("conjugating maps must be square of the same dimension")
    x = PolyMap.identity(n)
    if G.compose(F) != x or F.compose(G) != x:
        raise ValueError("F and G are not mutually inverse")
    linear_parts = []
    for i, Gi in enumerate(G):
        coeffs = deform(Gi, H, check=False).coefficients()
        nu = max(coeffs, default=MINUS_INFINITY)
        if nu > 1:
            raise ValueError(f"component G_{i + 1} has quasi-degree {nu} > 1")
        linear_parts.append(coeffs.get(1, Poly.zero(n)))
    via_linear_part = PolyMap(linear_parts, n).compose(F)
    direct = G.compose((x + H).compose(F)) - x
    if via_linear_part != direct:
        raise VerificationError("conjugate differs between the two constructions")
    report = check_qt(direct, extras=False)
    if not report.is_qt:
        raise VerificationError(f"conjugate is not a quasi-translation: {report}")
    return direct


def homogenize(H: PolyMap, d: Optional[int] = None, rank_mode: str = "randomized", seed: int = 0) -> PolyMap:
    """Degree-``d`` homogenization ``x_{n+1}^d (H(x / x_{n+1}), 0)`` in ``n + 1`` variables."""
    require_qt(H)
    n = H.arity
    deg = H.degree()
    if d is None:
        d = max(deg, 0) if deg != MINUS_INFINITY else 0
    if deg != MINUS_INFINITY and d < deg:
        raise ValueError(f"degree {d} is below deg H = {deg}")
    comps = []
    for p in H:
        terms = {m + (d - sum(m),): c for m, c in p.terms.items()}
        comps.append(Poly(n + 1, terms))
    comps.append(Poly.zero(n + 1))
    lifted = PolyMap(comps, n + 1)
    if homogeneous_degree(lifted) not in (d, 0):
        raise VerificationError("homogenization is not homogeneous")
    if not is_quasi_translation(lifted):
        raise VerificationError("homogenization is not a quasi-translation")
    r0 = rank(H.jacobian(), rank_mode, seed)
    r1 = rank(lifted.jacobian(), rank_mode, seed)
    if not r0 <= r1 <= r0 + 1:
        raise VerificationError(f"Jacobian rank bound violated: {r0} vs {r1}")
    return lifted


def check_homog_vanish(H: PolyMap) -> bool:
    """Whether ``H(tH) = 0`` for a homogeneous map of degree ``d >= 1``.

    Cross-checked against the top ``t``-coefficient of ``H(x + tH)``.
    """
    _require_square(H)
    d = homogeneous_degree(H)
    if d is None:
        raise ValueError("map is not homogeneous")
    if H.is_zero:
        return True
    if d < 1:
        raise ValueError("constant maps are excluded (degree must be at least 1)")
    n = H.arity
    t = Poly.var(n + 1, n)
    scaled = [t * p.extend() for p in H]
    direct = all(p.substitute(scaled).is_zero for p in H)
    shifted = _shifted(H)
    top = all(
        p.substitute(shifted).coefficients_in(n).get(d, Poly.zero(n + 1)).is_zero for p in H
    )
    if direct != top:
        raise VerificationError("H(tH) and the leading t-coefficient of H(x+tH) disagree")
    return direct


def nilpotency_index(H: PolyMap) -> Optional[int]:
    _require_square(H)
    return _powers_until_zero(H.jacobian(), H.arity)[0]


__all__ = [
    "Deformation",
    "QtReport",
    "QuasiTranslation",
    "check_homog_vanish",
    "check_qt",
    "conjugate",
    "deform",
    "homogeneous_degree",
    "homogenize",
    "is_invariant",
    "is_quasi_translation",
    "iterate",
    "linear_conjugate",
    "nilpotency_index",
    "quasi_degree",
    "require_qt",
    "strip_gcd",
]
