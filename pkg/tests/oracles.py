"""Reference implementations that share no code with the package.

Polynomials here are plain ``{exponent tuple: Fraction}`` dicts, or sympy
expressions; they are only ever compared against package results.
"""

from fractions import Fraction
from itertools import permutations

import sympy


def as_dict(p):
    return {m: Fraction(c) for m, c in p.terms.items()}


def convolve(a, b):
    """Brute-force product of two term dicts."""
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            out[m] = out.get(m, 0) + ca * cb
    return {m: c for m, c in out.items() if c}


def differentiate(a, i):
    out = {}
    for m, c in a.items():
        if m[i]:
            e = list(m)
            e[i] -= 1
            out[tuple(e)] = out.get(tuple(e), 0) + c * m[i]
    return {m: c for m, c in out.items() if c}


def evaluate(a, point):
    total = Fraction(0)
    for m, c in a.items():
        term = Fraction(c)
        for x, e in zip(point, m):
            term *= Fraction(x) ** e
        total += term
    return total


def cofactor_det(rows):
    """Leibniz-formula determinant of a small matrix with entries supporting + and *."""
    n = len(rows)
    total = 0
    for perm in permutations(range(n)):
        inversions = sum(1 for i in range(n) for j in range(i + 1, n) if perm[i] > perm[j])
        term = -1 if inversions % 2 else 1
        for i, j in enumerate(perm):
            term = term * rows[i][j]
        total = total + term
    return total


def symbols(n, prefix="x"):
    return sympy.symbols(f"{prefix}1:{n + 1}")


def to_sympy(p, prefix="x"):
    xs = symbols(p.arity, prefix)
    expr = sympy.Integer(0)
    for m, c in p.terms.items():
        term = sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
        for x, e in zip(xs, m):
            term *= x ** e
        expr += term
    return sympy.expand(expr)


def sympy_rank(matrix):
    """Rank over Q(x) of a package PolyMatrix, via sympy."""
    from sympy.polys.matrices import DomainMatrix

    xs = symbols(matrix.arity)
    m = sympy.Matrix([[to_sympy(matrix[i, j]) for j in range(matrix.cols)] for i in range(matrix.rows)])
    return DomainMatrix.from_Matrix(m).convert_to(sympy.QQ.frac_field(*xs)).rank()
