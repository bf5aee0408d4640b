"""Acceptance suite: nine end-to-end criteria, each with a time budget.

Run with pytest (a summary line per criterion is printed at the end) or
directly with ``python tests/test_acceptance.py``.
"""

import random
import sys
import time

from qtrans import gallery
from qtrans.classify import classify_small
from qtrans.core import Poly, PolyMap, det, gradient, hessian, jacobian, matmul, rank
from qtrans.corpus import (
    hesse_homogeneous,
    hesse_plane_inhomogeneous,
    homogeneous_qt_forms,
    non_qt_corpus,
    nonzero_random_poly,
    qt_corpus,
    small_qt_forms,
)
from qtrans.hessian import (
    column_dependence,
    find_relation,
    hesse_check,
    image_span,
    make_relation,
    qt_from_relation,
)
from qtrans.quasitrans import check_qt, conjugate, homogenize, is_invariant, quasi_degree, strip_gcd

RESULTS = []


class Criterion:
    """Collects failures for one criterion and times it."""

    def __init__(self, number, title, budget):
        self.number, self.title, self.budget = number, title, budget
        self.failures = []
        self.count = 0

    def __enter__(self):
        self.start = time.perf_counter()
        return self

    def expect(self, ok, what):
        self.count += 1
        if not ok:
            self.failures.append(what)

    def __exit__(self, *exc):
        self.elapsed = time.perf_counter() - self.start
        if exc[0] is not None:
            self.failures.append(f"{exc[0].__name__}: {exc[1]}")
        self.passed = not self.failures and self.elapsed < self.budget
        status = "PASS" if self.passed else "FAIL"
        detail = f"{self.count} checks, {len(self.failures)} failures, {self.elapsed:.2f}s of {self.budget}s"
        if self.failures:
            detail += f"; first failure: {self.failures[0]}"
        line = f"criterion {self.number} [{status}] {self.title}: {detail}"
        RESULTS.append(line)
        print(line)
        return True


def _assert(c):
    assert c.passed, RESULTS[-1]


def test_criterion_1_ternary_square():
    with Criterion(1, "relation and map for the square of the ternary form", 5) as c:
        h = gallery.power_of_ternary_form(2)
        rel = find_relation(gradient(h), 4, True)
        c.expect(rel is not None and rel.degree == 2, "degree-2 relation")
        target = gallery.ternary_relation()
        c.expect(rel.R.monic_normal() == target.monic_normal(), "relation spans the line of y3*y5 - y4^2")
        H = qt_from_relation(h, rel)
        expected = gallery.ternary_qt(2)
        c.expect(H == expected or H == -expected, "H = 2p(0, 0, x2^2, -2x1x2, x1^2)")
        c.expect(check_qt(H).is_qt, "quasi-translation")
        for f in (Poly.var(5, 0), Poly.var(5, 1), gallery.ternary_form()):
            c.expect(is_invariant(f, H), f"{f} invariant")
    _assert(c)


def test_criterion_2_cubic_orbit_conjugation():
    with Criterion(2, "conjugation of (0, x1, x1^2, x1^3)", 5) as c:
        F, G = gallery.cubic_orbit_conjugators()
        Ht = conjugate(gallery.cubic_orbit_qt(), F, G)
        c.expect(Ht == gallery.cubic_orbit_conjugate(), "closed form of the conjugate")
        c.expect(check_qt(Ht).is_qt, "quasi-translation")
        c.expect(image_span(Ht).dim == 4, "no linear invariants")
    _assert(c)


def test_criterion_3_paired_squares():
    with Criterion(3, "paired squares with constant and with polynomial coefficients", 30) as c:
        ps = gallery.paired_squares(6, 1, 1)
        c.expect(matmul(hessian(ps.h), ps.H).is_zero, "Hh · H = 0")
        c.expect(qt_from_relation(ps.h, make_relation(ps.relation(), gradient(ps.h))) == ps.H, "H = (∇R)(∇h)")
        c.expect(check_qt(ps.H).is_qt, "constant instance is a quasi-translation")
        pp = gallery.paired_squares_polynomial(6)
        c.expect(pp.scaled_relation_value().is_zero, "relation vanishes on G")
        c.expect(column_dependence(pp.G, pp.H), "JG · H~ = 0")
        c.expect(check_qt(pp.H).is_qt, "polynomial instance is a quasi-translation")
        c.expect(image_span(pp.H).dim == 6, "image span has dimension 6")
    _assert(c)


def test_criterion_4_minimal_degree_matters():
    with Criterion(4, "minimal versus non-minimal relation for x3*x4", 1) as c:
        h = gallery.bilinear_pair()
        rel = find_relation(gradient(h), 4, False)
        c.expect(rel.degree == 1, "minimal relation has degree 1")
        H = qt_from_relation(h, rel)
        c.expect(all(p.is_constant for p in H) and not H.is_zero, "H is a nonzero constant")
        Hn = qt_from_relation(h, make_relation(gallery.bilinear_nonminimal_relation(), gradient(h)))
        c.expect(Hn == PolyMap.parse("x4; x3; 0; 0", 4), "non-minimal relation gives (x4, x3, 0, 0)")
        c.expect(image_span(Hn).dim == 2, "its image span has dimension 2")
    _assert(c)


def test_criterion_5_equivalence_suite():
    with Criterion(5, "three conditions agree on 200 generated maps", 120) as c:
        positives, negatives = qt_corpus(seed=0), non_qt_corpus(seed=1)
        c.expect(len(positives) == 100 and len(negatives) == 100, "corpus sizes")
        for item in positives + negatives:
            report = check_qt(item.H)
            c.expect(report.consistent, f"flags disagree on {item.H}")
            if report.is_qt:
                n = len(item.H)
                c.expect(report.nilpotency_index is not None and report.nilpotency_index <= n,
                         f"(JH)^n != 0 for {item.H}")
                c.expect(report.series_identity is True, f"series identity fails for {item.H}")
        c.expect(all(check_qt(i.H, extras=False).is_qt for i in positives), "every positive is a quasi-translation")
        c.expect(not any(check_qt(i.H, extras=False).is_qt for i in negatives), "every mutant fails")
    _assert(c)


def test_criterion_6_quasi_degree_laws():
    with Criterion(6, "quasi-degree is additive and vanishes on stripped gcds", 60) as c:
        rng = random.Random(6)
        for H in gallery.seed_quasi_translations():
            n = H.arity
            for _ in range(100):
                f = nonzero_random_poly(rng, n, 2, terms=3)
                g = nonzero_random_poly(rng, n, 2, terms=3)
                nf, ng = quasi_degree(f, H, check=False), quasi_degree(g, H, check=False)
                c.expect(quasi_degree(f * g, H, check=False) == nf + ng, f"nu(fg) on {f}, {g}")
        for item in qt_corpus(seed=0):
            if item.origin != "multiply":
                continue
            g, reduced = strip_gcd(item.H)
            c.expect(quasi_degree(g, reduced) == 0, f"nu(g) != 0 for {item.H}")
    _assert(c)


def test_criterion_7_hesse_positive_cases():
    with Criterion(7, "linear dependence certificates for small singular Hessians", 120) as c:
        homogeneous = hesse_homogeneous(seed=2, count=50, max_dim=4)
        plane = hesse_plane_inhomogeneous(seed=3, count=50)
        for h in homogeneous + plane:
            c.expect(det(hessian(h)).is_zero, f"Hessian of {h} is not singular")
            cert = hesse_check(h)
            ok = cert is not None and any(cert.c) and cert.c0 == 0 and sum(
                (h.derive(j).scale(x) for j, x in enumerate(cert.c)), Poly.zero(h.arity)).is_zero
            c.expect(ok, f"no verified certificate for {h}")
        c.expect(all(h.is_homogeneous() for h in homogeneous), "homogeneous inputs")
        c.expect(all(p.arity == 2 and all(sum(m) != 1 for m in p.terms) for p in plane), "no linear terms")
    _assert(c)


def test_criterion_8_classification_round_trip():
    with Criterion(8, "classification descriptors rebuild the input", 120) as c:
        items = small_qt_forms(seed=4, count=50) + homogeneous_qt_forms(seed=5, count=50)
        for item in items:
            H = item.H
            n = len(H)
            out = classify_small(H)
            c.expect(out.reconstruct() == H, f"reconstruction of {H}")
            if out.decomposition is None:
                continue
            a, b, g = out.a, out.b, out.g
            c.expect(all(p.support() <= set(range(n - 2)) for p in (a, b)), f"a, b support for {H}")
            c.expect((b * g.derive(n - 2) + a * g.derive(n - 1)).is_zero, f"derivative constraint for {H}")
            c.expect(out.normal_form[n - 2] == b * g and out.normal_form[n - 1] == a * g, f"tail (bg, ag) for {H}")
            c.expect(out.decomposition.rebuild_g() == g, f"g from its parts for {H}")
    _assert(c)


def test_criterion_9_homogenization_bounds():
    with Criterion(9, "homogenization keeps the conditions and bounds the rank", 120) as c:
        for item in qt_corpus(seed=0):
            H = item.H
            lifted = homogenize(H, H.degree())
            c.expect(check_qt(lifted, extras=False).is_qt, f"lift of {H}")
            r = rank(jacobian(H), "certified")
            r_lift = rank(jacobian(lifted), "certified")
            c.expect(r <= r_lift <= r + 1, f"rank {r} -> {r_lift} for {H}")
    _assert(c)


if __name__ == "__main__":
    failed = 0
    for name, fn in sorted(globals().items()):
        if name.startswith("test_criterion_"):
            try:
                fn()
            except AssertionError:
                failed += 1
    sys.exit(1 if failed else 0)
