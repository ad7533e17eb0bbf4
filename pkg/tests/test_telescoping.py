import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from betaimex import coeffs
from betaimex.telescoping import (RadicandError, telescoping_coefficients,
                                  telescoping_identity_check)


def test_leading_coefficient_second_order_at_one():
    c = telescoping_coefficients(2, 1.0)
    assert c.leading_a == pytest.approx((4 - 2 * math.sqrt(3)) / 8, rel=1e-14)


def test_positivity_over_verified_range():
    for beta in np.arange(1.0, 100.001, 0.5):
        c2 = telescoping_coefficients(2, float(beta))
        c3 = telescoping_coefficients(3, float(beta))
        assert c2.leading_a > 0.0
        assert c3.leading_a > 0.0 and c3.leading_a_hat > 0.0


def test_all_values_real_and_finite():
    for beta in (1.0, 2.0, 10.0, 100.0):
        c = telescoping_coefficients(3, beta)
        for group in (c.a_form, c.d_form, c.intermediates):
            for name, value in group.items():
                assert math.isfinite(value), (beta, name)


def test_zero_sequence_residual_is_zero():
    assert telescoping_identity_check(2, 3.0, [0.0] * 8) == 0.0
    assert telescoping_identity_check(3, 3.0, [0.0] * 8) == 0.0


def test_short_sequences_rejected():
    with pytest.raises(ValueError):
        telescoping_identity_check(2, 2.0, [1.0, 2.0, 3.0])
    with pytest.raises(coeffs.OrderError):
        telescoping_identity_check(4, 2.0, [0.0] * 10)
    with pytest.raises(coeffs.OrderError):
        telescoping_coefficients(4, 2.0)


seq_strategy = st.lists(st.floats(min_value=-50, max_value=50,
                                  allow_nan=False, allow_infinity=False),
                        min_size=6, max_size=120)


@settings(max_examples=100, deadline=None)
@given(k=st.sampled_from((2, 3)), beta=st.sampled_from((1.0, 2.0, 5.0, 10.0)),
       seq=seq_strategy)
def test_identities_hold_on_random_sequences(k, beta, seq):
    residual = telescoping_identity_check(k, beta, seq)
    scale = max(1.0, max(abs(s) for s in seq)) ** 2
    assert residual <= 1e-10 * scale


def test_second_order_pairing_telescopes_double_product():
    # spot check of the normalisation: the expansion equals twice the
    # (A_2, C_2) pairing, while the (D_2, C_2) form matches it directly
    beta = 2.0
    rec = coeffs.scheme_coefficients(2, beta)
    a, _, c = rec.arrays()
    t = telescoping_coefficients(2, beta).a_form
    u, v, w = 0.3, -1.2, 0.7
    lhs = (a[2] * u + a[1] * v + a[0] * w) * (c[1] * u + c[0] * v)
    rhs = (t["a"] * (u * u - v * v)
           + (t["b"] * u + t["c"] * v) ** 2 - (t["b"] * v + t["c"] * w) ** 2
           + (t["d"] * u + t["e"] * v + t["f"] * w) ** 2)
    assert rhs == pytest.approx(2.0 * lhs, rel=1e-12)


def test_radicand_guard_fires_outside_verified_range():
    # the closed forms lose realness long past the verified window; the guard
    # must turn that into an explicit error instead of a NaN
    with pytest.raises(RadicandError):
        telescoping_coefficients(3, 1e6)
    with pytest.raises(ValueError):
        telescoping_coefficients(3, 0.5)
