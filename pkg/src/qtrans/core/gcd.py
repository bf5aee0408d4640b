"""Multivariate gcd over the rationals by recursive primitive PRS.

The ring Q[x1..xn] is viewed as R[v] with ``v`` the highest-index variable
that occurs and R the polynomials in the remaining variables.  Contents in R
are computed recursively; primitive parts are reduced by a primitive
pseudo-remainder sequence in ``v``.
"""

from __future__ import annotations

from functools import reduce
from typing import Iterable, Sequence

from .poly import Poly


def _main_var(*polys: Poly) -> int:
    used = set()
    for p in polys:
        used |= p.support()
    return max(used) if used else -1


def content_in(f: Poly, v: int) -> Poly:
    """gcd of the coefficients of ``f`` viewed as a polynomial in ``x_v``."""
    coeffs = list(f.coefficients_in(v).values())
    return reduce(gcd, coeffs, Poly.zero(f.arity))


def primitive_in(f: Poly, v: int):
    c = content_in(f, v)
    return c, f.exquo(c)


def prem(f: Poly, g: Poly, v: int) -> Poly:
    """Pseudo-remainder of ``f`` by ``g`` with respect to ``x_v``."""
    dg = g.degree_in(v)
    gc = g.coefficients_in(v)
    lc = gc[dg]
    r = f
    exponent = f.degree_in(v) - dg + 1
    while not r.is_zero and r.degree_in(v) >= dg:
        dr = r.degree_in(v)
        lr = r.coefficients_in(v)[dr]
        r = r * lc - (g * lr).shift_var(v, dr - dg)
        exponent -= 1
    if exponent > 0:
        r = r * lc ** exponent
    return r


def gcd(f: Poly, g: Poly) -> Poly:
    """Greatest common divisor, normalized by :meth:`Poly.monic_normal`.

    ``gcd(0, 0)`` is ``0``; a nonzero constant gcd is ``1``.
    """
    if f.arity != g.arity:
        from ..errors import DimensionError

        raise DimensionError(f"arity mismatch: {f.arity} vs {g.arity}")
    if f.is_zero:
        return g.monic_normal()
    if g.is_zero:
        return f.monic_normal()
    v = _main_var(f, g)
    if v < 0:
        return Poly.one(f.arity)
    f_has, g_has = f.involves(v), g.involves(v)
    if not g_has:
        return gcd(content_in(f, v), g)
    if not f_has:
        return gcd(f, content_in(g, v))
    cf, pf = primitive_in(f, v)
    cg, pg = primitive_in(g, v)
    c = gcd(cf, cg)
    if pf.degree_in(v) < pg.degree_in(v):
        pf, pg = pg, pf
    while not pg.is_zero:
        r = prem(pf, pg, v)
        pf = pg
        if r.is_zero:
            pg = r
        elif not r.involves(v):
            pf = Poly.one(f.arity)
            pg = Poly.zero(f.arity)
        else:
            pg = primitive_in(r, v)[1]
    _, pf = primitive_in(pf, v)
    return (pf * c).monic_normal()


def gcd_list(polys: Iterable[Poly]) -> Poly:
    """gcd of a sequence, normalized to content 1 and positive leading coefficient.

    Raises ``ValueError`` when every input is zero.
    """
    polys = list(polys)
    if not polys:
        raise ValueError("gcd of an empty list")
    nonzero = [p for p in polys if not p.is_zero]
    if not nonzero:
        raise ValueError("gcd is undefined when every input is zero")
    nonzero.sort(key=len)
    g = nonzero[0].monic_normal()
    for p in nonzero[1:]:
        if g == 1:
            break
        g = gcd(g, p)
    return g


def lcm(f: Poly, g: Poly) -> Poly:
    if f.is_zero or g.is_zero:
        return Poly.zero(f.arity)
    return (f * g).exquo(gcd(f, g)).monic_normal()


def cofactors(polys: Sequence[Poly], g: Poly):
    """Exact quotients ``p / g`` for each ``p``."""
    return [p.exquo(g) for p in polys]
