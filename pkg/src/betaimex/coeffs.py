"""Coefficients of the shifted BDF/IMEX multistep family.

For order k and shift beta >= 1 the scheme advances u_t + L u + G[u] = f by

    (1/dt) * sum_q a[q] * u^{n+1-k+q}
        + L(sum_q b[q] * u^{n+2-k+q})
        + G(sum_q c[q] * u^{n+1-k+q}) = f(t^{n+beta}),

where the a-formula differentiates at t^{n+beta}, and the b- (implicit) and
c- (explicit) formulas interpolate the value there.  Each coefficient set
solves a Vandermonde system on the equispaced nodes beta-1, ..., beta+k-1;
the solver below uses the Bjorck-Pereyra dual recurrence, which only ever
divides by integer node differences.  beta = 1 recovers the classical
schemes.

The implicit combination splits as b = eta * c + d with the scalar eta(k, beta)
hard-wired to (beta-1)/beta, (beta-1)/(beta+1), (beta-1)/(beta+3),
(beta-1)/(beta+15) for k = 2..5; this splitting is what the energy estimates
in `certificates` and `telescoping` are built on.

All functions accept beta as a float (returning numpy arrays) or as a
Fraction (returning exact rational lists); the Fraction path backs the test
oracles.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

ORDERS = (2, 3, 4, 5)

# eta_k(beta) = (beta - 1) / (beta + offset)
ETA_DENOMINATOR_OFFSET = {2: 0, 3: 1, 4: 3, 5: 15}


class OrderError(ValueError):
    pass


def _check_order(k):
    if k not in ORDERS:
        raise OrderError(
            f"order k={k} is not supported; valid orders are {ORDERS} "
            "(no admissible multiplier exists at sixth order)"
        )


def _check_beta(beta):
    if isinstance(beta, Fraction):
        if beta < 1:
            raise ValueError(f"shift beta={beta} must be >= 1")
        return beta
    beta = float(beta)
    if not math.isfinite(beta):
        raise ValueError("shift beta must be finite")
    if beta < 1.0:
        raise ValueError(f"shift beta={beta} must be >= 1")
    return beta


def vandermonde_dual_solve(nodes, rhs):
    """Solve sum_j x_j * nodes[j]**m = rhs[m], m = 0..n (Bjorck-Pereyra dual).

    Works elementwise in whatever arithmetic the inputs carry (float or
    Fraction); the divisions are by node differences only, which are integers
    for the equispaced node sets used here.
    """
    n = len(nodes) - 1
    if len(rhs) != n + 1:
        raise ValueError("rhs length must match node count")
    x = list(rhs)
    for step in range(n):
        for i in range(n, step, -1):
            x[i] = x[i] - nodes[step] * x[i - 1]
    for step in range(n - 1, -1, -1):
        for i in range(step + 1, n + 1):
            x[i] = x[i] / (nodes[i] - nodes[i - step - 1])
        for i in range(step, n):
            x[i] = x[i] - x[i + 1]
    return x


def _pack(values, beta):
    if isinstance(beta, Fraction):
        return list(values)
    return np.array([float(v) for v in values])


def _solve_a(k, beta):
    # nodes beta-1+j carry a[k-j]; rhs row 1 is -1 (unit derivative), rest 0
    one = beta - beta + 1
    nodes = [beta - 1 + j for j in range(k + 1)]
    rhs = [one * 0] * (k + 1)
    rhs[1] = -one
    sol = vandermonde_dual_solve(nodes, rhs)
    return sol[::-1]


def _solve_b(k, beta):
    one = beta - beta + 1
    nodes = [beta - 1 + j for j in range(k)]
    rhs = [one * 0] * k
    rhs[0] = one
    return vandermonde_dual_solve(nodes, rhs)[::-1]


def _solve_c(k, beta):
    one = beta - beta + 1
    nodes = [beta + j for j in range(k)]
    rhs = [one * 0] * k
    rhs[0] = one
    return vandermonde_dual_solve(nodes, rhs)[::-1]


def solve_a(k, beta):
    """Derivative-formula coefficients a[0..k] (a[q] multiplies u^{n+1-k+q})."""
    _check_order(k)
    beta = _check_beta(beta)
    return _pack(_solve_a(k, beta), beta)


def solve_b(k, beta):
    """Implicit interpolation coefficients b[0..k-1] (b[q] multiplies u^{n+2-k+q})."""
    _check_order(k)
    beta = _check_beta(beta)
    return _pack(_solve_b(k, beta), beta)


def solve_c(k, beta):
    """Explicit interpolation coefficients c[0..k-1] (c[q] multiplies u^{n+1-k+q})."""
    _check_order(k)
    beta = _check_beta(beta)
    return _pack(_solve_c(k, beta), beta)


def eta(k, beta):
    """Splitting scalar eta_k(beta); vanishes at beta = 1."""
    _check_order(k)
    beta = _check_beta(beta)
    return (beta - 1) / (beta + ETA_DENOMINATOR_OFFSET[k])


def split_d(k, beta):
    """Residual implicit weights d = b - eta * c of the splitting b = eta*c + d."""
    _check_order(k)
    beta = _check_beta(beta)
    e = (beta - 1) / (beta + ETA_DENOMINATOR_OFFSET[k])
    b = _solve_b(k, beta)
    c = _solve_c(k, beta)
    return _pack([bq - e * cq for bq, cq in zip(b, c)], beta)


@dataclass(frozen=True)
class SchemeCoefficients:
    """Full coefficient record for one (k, beta) scheme.

    Tuples are ascending in the level index q; `a` has k+1 entries, the rest
    k entries.  Immutable, so instances can be shared freely across threads.
    """

    k: int
    beta: object
    a: tuple
    b: tuple
    c: tuple
    d: tuple
    eta: object

    def arrays(self):
        return (np.asarray(self.a, dtype=float),
                np.asarray(self.b, dtype=float),
                np.asarray(self.c, dtype=float))


def _admissibility_warning(k, beta):
    b = float(beta)
    if k == 4 and b < 2.0:
        warnings.warn(
            f"k=4 with beta={b:g}: multiplier certificate requires beta >= 2",
            stacklevel=3,
        )
    if k == 5 and b < 6.5:
        warnings.warn(
            f"k=5 with beta={b:g}: multiplier certificate verified only for beta >= 6.5",
            stacklevel=3,
        )


def scheme_coefficients(k, beta):
    """Assemble (a, b, c, d, eta) by the Vandermonde route; k in 2..5."""
    _check_order(k)
    beta = _check_beta(beta)
    _admissibility_warning(k, beta)
    e = (beta - 1) / (beta + ETA_DENOMINATOR_OFFSET[k])
    b = _solve_b(k, beta)
    c = _solve_c(k, beta)
    d = [bq - e * cq for bq, cq in zip(b, c)]
    return SchemeCoefficients(
        k=k, beta=beta,
        a=tuple(_solve_a(k, beta)), b=tuple(b), c=tuple(c), d=tuple(d), eta=e,
    )


def exact_scheme_coefficients(k, beta):
    """Rational-arithmetic twin of scheme_coefficients (exact test oracle)."""
    return scheme_coefficients(k, Fraction(beta))


def closed_form(k, beta):
    """Printed rational closed forms for k = 2, 3, 4 (no closed form at k = 5)."""
    if k not in (2, 3, 4):
        raise OrderError(f"closed forms are tabulated for k in (2, 3, 4), not k={k}")
    beta = _check_beta(beta)
    _admissibility_warning(k, beta)
    B = beta
    if k == 2:
        a = ((2 * B - 1) / 2, -2 * B, (2 * B + 1) / 2)
        b = (-(B - 1), B)
        c = (-B, B + 1)
        d = (b[0] * 0, 1 / B)
    elif k == 3:
        a = (-(3 * B ** 2 - 1) / 6,
             (9 * B ** 2 + 6 * B - 6) / 6,
             -(9 * B ** 2 + 12 * B - 3) / 6,
             (3 * B ** 2 + 6 * B + 2) / 6)
        b = ((B ** 2 - B) / 2, -(B ** 2 - 1), (B ** 2 + B) / 2)
        c = ((B ** 2 + B) / 2, -(B ** 2 + 2 * B), (B ** 2 + 3 * B + 2) / 2)
        d = (b[0] * 0, (1 - B) / (1 + B), b[0] * 0 + 1)
    else:
        a = ((2 * B ** 3 + 3 * B ** 2 - B - 1) / 12,
             (-8 * B ** 3 - 18 * B ** 2 + 4 * B + 6) / 12,
             (12 * B ** 3 + 36 * B ** 2 + 6 * B - 18) / 12,
             (-8 * B ** 3 - 30 * B ** 2 - 20 * B + 10) / 12,
             (2 * B ** 3 + 9 * B ** 2 + 11 * B + 3) / 12)
        b = ((-B ** 3 + B) / 6,
             (B ** 3 + B ** 2 - 2 * B) / 2,
             (-B ** 3 - 2 * B ** 2 + B + 2) / 2,
             (B ** 3 + 3 * B ** 2 + 2 * B) / 6)
        c = ((-B ** 3 - 3 * B ** 2 - 2 * B) / 6,
             (B ** 3 + 4 * B ** 2 + 3 * B) / 2,
             (-B ** 3 - 5 * B ** 2 - 6 * B) / 2,
             (B ** 3 + 6 * B ** 2 + 11 * B + 6) / 6)
        d = (-B * (B ** 2 - 1) / (6 * (B + 3)),
             B * (B - 1) / 2,
             -(B ** 2 + B - 2) / 2,
             (B ** 2 + 3 * B + 2) / 6)
    e = (B - 1) / (B + ETA_DENOMINATOR_OFFSET[k])
    return SchemeCoefficients(k=k, beta=beta, a=a, b=b, c=c, d=d, eta=e)
