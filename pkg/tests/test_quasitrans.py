import random
from fractions import Fraction

import pytest

from qtrans import gallery
from qtrans.core import Poly, PolyMap, compose, jacobian, matmul, parse_x, rank
from qtrans.core.poly import MINUS_INFINITY
from qtrans.errors import DimensionError, NotQuasiTranslationError
from qtrans.quasitrans import (
    QuasiTranslation,
    check_homog_vanish,
    check_qt,
    conjugate,
    deform,
    homogeneous_degree,
    homogenize,
    is_invariant,
    iterate,
    linear_conjugate,
    nilpotency_index,
    quasi_degree,
    strip_gcd,
)

import oracles


def test_ternary_map_satisfies_all_conditions():
    report = check_qt(gallery.ternary_qt(2))
    assert report.cond_inverse and report.cond_deform and report.cond_jhh
    assert report.series_identity


def test_translation_is_nilpotent_of_index_one():
    report = check_qt(PolyMap.parse("3; -1/2; 7", 3))
    assert report.is_qt and report.nilpotency_index == 1


def test_swap_fails_every_condition():
    report = check_qt(PolyMap.parse("x2; x1", 2))
    assert not (report.cond_inverse or report.cond_deform or report.cond_jhh)
    assert report.consistent


def test_check_requires_square_map():
    with pytest.raises(DimensionError):
        check_qt(PolyMap.parse("x1; x2; x1", 2))


def test_nilpotency_index_never_exceeds_dimension():
    for H in gallery.seed_quasi_translations():
        k = nilpotency_index(H)
        assert k is not None and k <= len(H)


def test_quasi_translation_record():
    q = QuasiTranslation.of(gallery.ternary_qt(2))
    assert q.verified and q.homogeneous_degree == 5


def test_quasi_degree_of_cubic_orbit_form_is_one():
    H = gallery.cubic_orbit_qt()
    f = gallery.cubic_orbit_invariant()
    d = deform(f, H)
    assert d.degree == 1
    assert d.at_zero() == f
    # direct expansion: coefficient of t is H1 + x2 H4 + x4 H2 - 2 x3 H3
    assert d.coefficients()[1] == parse_x("x2*x1^3 + x4*x1 - 2*x3*x1^2", 4)
    assert quasi_degree(Poly.var(4, 0), H) == 0


def test_quasi_degree_of_zero_is_minus_infinity():
    assert quasi_degree(Poly.zero(4), gallery.cubic_orbit_qt()) == MINUS_INFINITY


def test_quasi_degree_needs_quasi_translation():
    with pytest.raises(NotQuasiTranslationError):
        quasi_degree(Poly.var(2, 0), PolyMap.parse("x2; x1", 2))


def test_quasi_degree_is_additive_and_bounded_by_degree():
    rng = random.Random(2)
    H = gallery.cubic_orbit_qt()
    for _ in range(50):
        f = Poly(4, {tuple(rng.randint(0, 2) for _ in range(4)): rng.randint(1, 5) for _ in range(3)})
        g = Poly(4, {tuple(rng.randint(0, 2) for _ in range(4)): rng.randint(-5, -1) for _ in range(2)})
        assert quasi_degree(f * g, H) == quasi_degree(f, H) + quasi_degree(g, H)
        assert quasi_degree(f, H) <= f.degree()


def test_iterate_matches_repeated_composition():
    H = gallery.cubic_orbit_qt()
    step = PolyMap.identity(4) + H
    assert iterate(H, 0) == PolyMap.identity(4)
    assert iterate(H, 1) == step
    assert iterate(H, 3) == PolyMap.parse("x1; x2 + 3*x1; x3 + 3*x1^2; x4 + 3*x1^3", 4)
    assert iterate(H, 3) == compose(step, compose(step, step))
    power = PolyMap.identity(4)
    for m in range(1, 6):
        power = compose(step, power)
        assert iterate(H, m) == power


def test_invariants():
    H = gallery.ternary_qt(2)
    assert is_invariant(gallery.ternary_form(), H)
    assert not is_invariant(Poly.var(4, 1), gallery.cubic_orbit_qt())
    assert is_invariant(Poly.const(4, 5), gallery.cubic_orbit_qt())


def test_strip_gcd_of_ternary_map():
    g, reduced = strip_gcd(gallery.ternary_qt(2))
    assert g == gallery.ternary_form()
    assert reduced == PolyMap.parse("0; 0; 2*x2^2; -4*x1*x2; 2*x1^2", 5)
    assert quasi_degree(g, reduced) == 0


def test_strip_gcd_trivial_cases():
    H = PolyMap.parse("0; x1; 1", 3)
    assert strip_gcd(H) == (Poly.one(3), H)
    assert strip_gcd(gallery.cubic_orbit_qt()) == (Poly.var(4, 0), PolyMap.parse("0; 1; x1; x1^2", 4))
    c = PolyMap.parse("0; 1; 2", 3).scale(parse_x("x1^2", 3))
    assert strip_gcd(c) == (parse_x("x1^2", 3), PolyMap.parse("0; 1; 2", 3))


def test_strip_gcd_of_zero_map():
    with pytest.raises(ValueError):
        strip_gcd(PolyMap.parse("0; 0", 2))


def test_conjugation_of_cubic_orbit():
    F, G = gallery.cubic_orbit_conjugators()
    Ht = conjugate(gallery.cubic_orbit_qt(), F, G)
    assert Ht == gallery.cubic_orbit_conjugate()
    report = check_qt(Ht)
    assert report.is_qt
    assert rank(jacobian(Ht), "certified") == 2


def test_conjugate_rejects_non_inverse_pair():
    F, _ = gallery.cubic_orbit_conjugators()
    with pytest.raises(ValueError):
        conjugate(gallery.cubic_orbit_qt(), F, F)


def test_conjugate_rejects_high_quasi_degree():
    H = gallery.cubic_orbit_qt()
    x = Poly.variables(4)
    F = PolyMap([x[0], x[1] + x[2] ** 2, x[2], x[3]], 4)
    G = PolyMap([x[0], x[1] - x[2] ** 2, x[2], x[3]], 4)
    # G_2 = x2 - x3^2 has quasi-degree 2 for this H
    with pytest.raises(ValueError):
        conjugate(H, F, G)


def test_linear_conjugation_is_functorial():
    H = gallery.cubic_orbit_qt()
    T = [[1, 2, 0, 0], [0, 1, 0, 0], [0, 0, 1, 1], [1, 0, 0, 1]]
    S = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 3, 1]]
    TS = [[sum(T[i][k] * S[k][j] for k in range(4)) for j in range(4)] for i in range(4)]
    assert linear_conjugate(linear_conjugate(H, T), S) == linear_conjugate(H, TS)


def test_homogenization_of_inhomogeneous_map():
    H = PolyMap.parse("0; x1^2 + 1", 2)
    lifted = homogenize(H)
    assert lifted == PolyMap.parse("0; x1^2 + x3^2; 0", 3)
    assert homogeneous_degree(lifted) == 2
    assert check_qt(lifted).is_qt


def test_homogenization_with_larger_degree():
    lifted = homogenize(gallery.cubic_orbit_qt(), 4)
    assert homogeneous_degree(lifted) == 4 and check_qt(lifted).is_qt


def test_homogeneous_maps_vanish_on_their_image():
    assert check_homog_vanish(gallery.ternary_qt(2))
    assert check_homog_vanish(gallery.paired_squares(6).H)
    with pytest.raises(ValueError):
        check_homog_vanish(PolyMap.parse("1; 0", 2))


def test_series_identity_agrees_with_independent_evaluation():
    # JH(x - tH) at a rational point and t = 2 equals sum_k 2^k (JH)^(k+1) there
    H = gallery.cubic_orbit_conjugate()
    point = [Fraction(1, 2), 2, -1, Fraction(3, 5)]
    t = 2
    shifted = [p - t * q for p, q in zip(point, H.evaluate(point))]
    J = jacobian(H)
    lhs = [[oracles.evaluate(oracles.as_dict(J[i, j]), shifted) for j in range(4)] for i in range(4)]
    Jp = [[oracles.evaluate(oracles.as_dict(J[i, j]), point) for j in range(4)] for i in range(4)]

    def mul(a, b):
        return [[sum(a[i][k] * b[k][j] for k in range(4)) for j in range(4)] for i in range(4)]

    rhs = [[0] * 4 for _ in range(4)]
    power = Jp
    for k in range(4):
        rhs = [[rhs[i][j] + t ** k * power[i][j] for j in range(4)] for i in range(4)]
        power = mul(power, Jp)
    assert lhs == rhs
