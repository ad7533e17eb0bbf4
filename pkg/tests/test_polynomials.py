import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from betaimex import coeffs
from betaimex.polynomials import (RealPolynomial, min_on_interval,
                                  polynomial_from_roots, roots,
                                  sylvester_matrix, sylvester_resultant)


def test_trimming_and_degree():
    p = RealPolynomial.from_coeffs([1.0, 2.0, 0.0, 1e-17])
    assert p.degree == 1
    assert RealPolynomial.from_coeffs([0.0, 0.0]).degree == 0


def test_roots_difference_of_squares():
    r = sorted(roots(RealPolynomial.from_coeffs([-1.0, 0.0, 1.0])).real)
    assert np.allclose(r, [-1.0, 1.0])


def test_explicit_polynomial_root_examples():
    # single root of the k=2 explicit polynomial at beta/(beta+1)
    c = coeffs.solve_c(2, 3.0)
    r = roots(RealPolynomial.from_coeffs(list(c)))
    assert len(r) == 1 and r[0].real == pytest.approx(0.75, rel=1e-12)
    # k=3: complex pair with squared modulus beta/(beta+2)
    c = coeffs.solve_c(3, 2.0)
    r = roots(RealPolynomial.from_coeffs(list(c)))
    assert np.allclose(np.abs(r) ** 2, 0.5, rtol=1e-10)


def test_roots_rejects_constant():
    with pytest.raises(ValueError):
        roots(RealPolynomial.from_coeffs([3.0]))


@settings(max_examples=60, deadline=None)
@given(st.lists(st.floats(min_value=-3, max_value=3), min_size=1, max_size=5,
                unique_by=lambda r: round(r, 1)))
def test_roots_round_trip(real_roots):
    # separated roots only: clustered roots are ill-conditioned by nature
    assume(min([1.0] + [abs(a - b) for i, a in enumerate(real_roots)
                        for b in real_roots[i + 1:]]) > 0.05)
    p = polynomial_from_roots(real_roots)
    got = sorted(roots(p).real)
    assert np.allclose(sorted(real_roots), got, atol=1e-7 * max(1, np.abs(real_roots).max()))


def test_sylvester_common_root_gives_zero():
    assert sylvester_resultant([-1, 1], [-1, 1]) == 0


def test_sylvester_matches_printed_second_order_value():
    for beta in (1, 2, 5, Fraction(7, 2)):
        rec = coeffs.exact_scheme_coefficients(2, Fraction(beta))
        assert sylvester_resultant(list(rec.a), list(rec.c)) == Fraction(-1, 2)
        assert sylvester_resultant(list(rec.d), list(rec.c)) == Fraction(-1)


def test_sylvester_printed_fourth_order_example():
    rec = coeffs.exact_scheme_coefficients(4, Fraction(2))
    assert sylvester_resultant(list(rec.d), list(rec.c)) == Fraction(-16)


def test_sylvester_matrix_shape():
    rows = sylvester_matrix([1, 2, 3], [4, 5])  # deg 2, deg 1
    assert len(rows) == 3 and all(len(r) == 3 for r in rows)


def _poly_mul(p, q):
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += a * b
    return out


def _gcd_degree(p, q):
    # Euclidean remainder sequence over the rationals
    a, b = [Fraction(x) for x in p], [Fraction(x) for x in q]

    def trim(u):
        while len(u) > 1 and u[-1] == 0:
            u.pop()
        return u

    a, b = trim(a), trim(b)
    while len(b) > 1 or b[0] != 0:
        while len(a) >= len(b) and (len(a) > 1 or a[0] != 0):
            factor = a[-1] / b[-1]
            shift = len(a) - len(b)
            for i, bi in enumerate(b):
                a[i + shift] -= factor * bi
            a = trim(a)
            if len(a) == 1 and a[0] == 0:
                break
        a, b = b, a
        b = trim(b)
    return len(a) - 1


small_coeff = st.integers(min_value=-4, max_value=4)


@settings(max_examples=50, deadline=None)
@given(p=st.lists(small_coeff, min_size=2, max_size=4),
       q=st.lists(small_coeff, min_size=2, max_size=4),
       shared=st.booleans(), root=st.integers(min_value=-3, max_value=3))
def test_resultant_zero_iff_common_factor(p, q, shared, root):
    pf = [Fraction(x) for x in p]
    qf = [Fraction(x) for x in q]
    if pf[-1] == 0 or qf[-1] == 0:
        return
    if shared:
        lin = [Fraction(-root), Fraction(1)]
        pf, qf = _poly_mul(pf, lin), _poly_mul(qf, lin)
    res = sylvester_resultant(pf, qf)
    assert (res == 0) == (_gcd_degree(pf, qf) >= 1)


def test_min_on_interval_examples():
    from betaimex.certificates import certificate_polynomials
    f2, _ = certificate_polynomials(2, 2.0)
    x, v = min_on_interval(f2, -1.0, 1.0)
    assert x == 1.0 and v == pytest.approx(2.0, abs=1e-12)
    # the fourth-order cubic at beta = 1: value 18 at the endpoint, interior
    # minimum slightly below it
    f4, _ = certificate_polynomials(4, 1.0)
    assert f4(1.0) == pytest.approx(18.0, abs=1e-12)
    x, v = min_on_interval(f4, -1.0, 1.0)
    assert x == pytest.approx(0.95982716681319716, rel=1e-10)
    assert v == pytest.approx(17.937406755415196, rel=1e-12)


def test_min_on_interval_constant_poly():
    p = RealPolynomial.from_coeffs([5.0])
    assert min_on_interval(p, -2.0, 3.0) == (-2.0, 5.0)


def test_min_on_interval_requires_ordering():
    with pytest.raises(ValueError):
        min_on_interval(RealPolynomial.from_coeffs([1.0, 1.0]), 2.0, 1.0)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.floats(min_value=-5, max_value=5), min_size=2, max_size=6),
       st.floats(min_value=-2, max_value=0.5), st.floats(min_value=0.6, max_value=2.5))
def test_min_on_interval_beats_dense_sampling(cs, lo, hi):
    p = RealPolynomial.from_coeffs(cs)
    if p.degree == 0:
        return
    x, v = min_on_interval(p, lo, hi)
    ys = p(np.linspace(lo, hi, 10_000))
    assert v <= ys.min() + 1e-9 * max(1.0, np.abs(ys).max())
    assert lo <= x <= hi
