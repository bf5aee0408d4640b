import random

import pytest

from qtrans import gallery
from qtrans.core import Poly, PolyMap, det, gradient, hessian, matmul, parse, parse_x
from qtrans.core.matrix import linear_map, row_times_matrix
from qtrans.corpus import hesse_homogeneous, random_unimodular
from qtrans.errors import DegreeCapExceeded, DimensionError
from qtrans.hessian import (
    HesseCertificate,
    affine_transport,
    column_dependence,
    find_relation,
    hesse_check,
    image_span,
    linear_terms,
    make_relation,
    qt_from_relation,
    reduce_variables,
    relation_map,
)
from qtrans.quasitrans import check_qt, homogeneous_degree

Y4 = ["y1", "y2", "y3", "y4"]


def test_ternary_square_relation():
    rel = find_relation(gradient(gallery.power_of_ternary_form(2)), 4, True)
    assert rel.degree == 2 and rel.minimal
    assert rel.R == gallery.ternary_relation()


def test_inhomogeneous_search_finds_the_same_relation():
    rel = find_relation(gradient(gallery.power_of_ternary_form(2)), 4, False)
    assert rel.R == gallery.ternary_relation()


def test_bilinear_pair_prefers_degree_one():
    rel = find_relation(gradient(gallery.bilinear_pair()), 4, False)
    assert rel.degree == 1 and rel.minimal
    assert rel.R == parse("y1", Y4)


def test_identity_gradient_has_no_relation():
    h = parse_x("1/2*x1^2 + 1/2*x2^2 + 1/2*x3^2", 3)
    assert find_relation(gradient(h), 5, False) is None


def test_relation_search_validates_input():
    with pytest.raises(DimensionError):
        find_relation(PolyMap.parse("x1; x2; x1", 2), 3)
    with pytest.raises(ValueError):
        find_relation(gradient(gallery.bilinear_pair()), 0)


def test_degree_cap_is_reported_separately():
    # (x1, x1^3) has the cubic relation y2 - y1^3 only
    with pytest.raises(DegreeCapExceeded):
        find_relation(PolyMap.parse("x1; x1^3", 2), 2)
    assert find_relation(PolyMap.parse("x1; x1^3", 2), 3).degree == 3


def test_nonminimal_relation_is_flagged():
    rel = make_relation(gallery.bilinear_nonminimal_relation(), gradient(gallery.bilinear_pair()))
    assert rel.degree == 2 and not rel.minimal


def test_map_from_ternary_relation():
    h = gallery.power_of_ternary_form(2)
    H = qt_from_relation(h, find_relation(gradient(h), 4, True))
    assert H == gallery.ternary_qt(2)


def test_map_from_minimal_bilinear_relation_is_a_translation():
    h = gallery.bilinear_pair()
    H = qt_from_relation(h, find_relation(gradient(h), 4))
    assert H == PolyMap.parse("1; 0; 0; 0", 4)


def test_map_from_nonminimal_bilinear_relation():
    h = gallery.bilinear_pair()
    H = qt_from_relation(h, make_relation(gallery.bilinear_nonminimal_relation(), gradient(h)))
    assert H == PolyMap.parse("x4; x3; 0; 0", 4)
    assert image_span(H).dim == 2


def test_paired_squares_with_constant_coefficients():
    ps = gallery.paired_squares(6)
    assert ps.G == gradient(ps.h)
    assert matmul(hessian(ps.h), ps.H).is_zero
    H = qt_from_relation(ps.h, make_relation(ps.relation(), ps.G))
    assert H == ps.H
    assert check_qt(H).is_qt


def test_paired_squares_with_other_rational_coefficients():
    ps = gallery.paired_squares(6, 2, -3)
    H = qt_from_relation(ps.h, make_relation(ps.relation(), gradient(ps.h)))
    assert H == ps.H


def test_paired_squares_with_polynomial_coefficients():
    pp = gallery.paired_squares_polynomial(6)
    assert pp.scaled_relation_value().is_zero
    assert column_dependence(pp.G, pp.H)
    assert check_qt(pp.H).is_qt
    assert image_span(pp.H).dim == 6
    assert homogeneous_degree(pp.H) == 5


def test_row_dependence_does_not_survive_polynomial_coefficients():
    # the chain rule picks up derivatives of a and b, so H~^t JG is not zero
    pp = gallery.paired_squares_polynomial(6)
    residue = row_times_matrix(pp.H.components, pp.G.jacobian())
    assert not all(p.is_zero for p in residue)


def test_relation_map_checks_row_dependence():
    G = gradient(gallery.power_of_ternary_form(2))
    H = relation_map(make_relation(gallery.ternary_relation(), G))
    assert all(p.is_zero for p in row_times_matrix(H.components, G.jacobian()))


def test_hesse_examples():
    assert hesse_check(gallery.bilinear_pair()) == HesseCertificate((1, 0, 0, 0), 0)
    assert hesse_check(parse_x("(x1 + x2)^3", 2)) == HesseCertificate((1, -1), 0)
    assert hesse_check(parse_x("x1^2 + x2^2", 2)) is None


def test_hesse_affine_variant():
    h = parse_x("x1 + x2^2", 2)
    assert hesse_check(h) is None
    cert = hesse_check(h, allow_affine=True)
    assert cert == HesseCertificate((1, 0), 1)


def test_hesse_certificates_annihilate():
    for h in hesse_homogeneous(seed=17, count=20):
        cert = hesse_check(h)
        total = sum((h.derive(j).scale(c) for j, c in enumerate(cert.c)), Poly.zero(h.arity))
        assert total.is_zero and any(cert.c)


def test_span_examples():
    assert image_span(PolyMap.parse("x4; x3; 0; 0", 4)).dim == 2
    assert image_span(PolyMap.parse("0; 0; 0", 3)).dim == 0
    report = image_span(gallery.ternary_qt(2))
    assert report.dim == 3
    assert report.annihilators == [[1, 0, 0, 0, 0], [0, 1, 0, 0, 0]]


def test_reduce_variables_examples():
    h = parse_x("(x1 + x2)^2", 2)
    T = reduce_variables(h, hesse_check(h))
    assert [row[-1] for row in T] == [1, -1]
    assert not h.substitute(linear_map(T).components).involves(1)

    g = parse_x("x1^2*x2 + x3", 4)
    assert reduce_variables(g, HesseCertificate((0, 0, 0, 1))) == [
        [1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]

    b = gallery.bilinear_pair()
    T = reduce_variables(b, HesseCertificate((1, 0, 0, 0)))
    assert [row[-1] for row in T] == [1, 0, 0, 0]
    assert not b.substitute(linear_map(T).components).involves(3)


def test_reduce_variables_rejects_zero_vector():
    with pytest.raises(ValueError):
        reduce_variables(gallery.bilinear_pair(), HesseCertificate((0, 0, 0, 0)))


def test_affine_transport_identity():
    h = gallery.power_of_ternary_form(2)
    R = gallery.ternary_relation()
    out = affine_transport(h, R, [[int(i == j) for j in range(5)] for i in range(5)])
    assert out.h == h and out.R == R and out.H == gallery.ternary_qt(2)


def test_affine_transport_under_random_unimodular_changes():
    h = gallery.power_of_ternary_form(2)
    R = gallery.ternary_relation()
    rng = random.Random(6)
    for _ in range(3):
        T = random_unimodular(rng, 5, 2, 1)
        out = affine_transport(h, R, T)
        assert out.R.substitute(gradient(out.h).components).is_zero


def test_affine_transport_removes_linear_terms():
    h = parse_x("(x1 + x2)^2*x3 + x3^2 + x1", 3)
    R = find_relation(gradient(h), 4).R
    T = [[1, 1, 0], [0, 1, 0], [0, 0, 1]]
    c = [1, -2, 3]
    shifted = h.substitute(linear_map(T, c).components)
    out = affine_transport(h, R, T, c, linear_terms(shifted))
    assert linear_terms(out.h) == [0, 0, 0]
    assert out.R.substitute(gradient(out.h).components).is_zero


def test_affine_transport_rejects_singular_matrix():
    with pytest.raises(ValueError):
        affine_transport(gallery.bilinear_pair(), parse("y1", Y4), [[1, 0, 0, 0]] * 4)


def test_affine_transport_keeps_singularity():
    h = gallery.bilinear_pair()
    out = affine_transport(h, parse("y1", Y4), [[1, 0, 0, 1], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], [0, 1, 0, 2])
    assert det(hessian(out.h)).is_zero
