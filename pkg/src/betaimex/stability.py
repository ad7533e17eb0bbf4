"""Absolute-stability regions of the shifted BDF schemes.

For the test equation u' = lambda*u the scheme reduces to the recurrence
sum_q a[q] w^{n+1-k+q} = z * sum_q b[q] w^{n+2-k+q} with z = lambda*dt, whose
characteristic polynomial in the amplification factor w is

    pi(w) = sum_{q=0}^{k} (a[q] - z*b[q-1]) w^q        (b[-1] := 0).

z belongs to the stability region iff pi satisfies the root condition: all
roots in the closed unit disk, roots on the boundary simple.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .coeffs import scheme_coefficients

ROOT_TOL = 1e-9
SEPARATION_TOL = 1e-6

DEFAULT_WINDOW = (-12.0, 4.0, -8.0, 8.0)
DEFAULT_RESOLUTION = (600, 600)

_EIG_CHUNK = 65536


def characteristic_coeffs(k, beta, z):
    """Ascending coefficients of pi(w) at the point z of the complex plane."""
    rec = scheme_coefficients(k, beta)
    a, b, _ = rec.arrays()
    out = a.astype(complex)
    out[1:] -= z * b
    return out


def _root_condition(roots, tol=ROOT_TOL):
    mods = np.abs(roots)
    if mods.max() > 1.0 + tol:
        return False
    near = roots[mods > 1.0 - tol]
    for i in range(len(near)):
        for j in range(i + 1, len(near)):
            if abs(near[i] - near[j]) <= SEPARATION_TOL:
                return False
    return True


def is_stable(k, beta, z, tol=ROOT_TOL):
    """Root-condition check at one point z."""
    coef = characteristic_coeffs(k, beta, z)
    scale = np.abs(coef).max()
    if abs(coef[-1]) <= 1e-14 * scale:
        # leading coefficient vanished: one amplification factor escaped to
        # infinity, so the root condition fails in any neighbourhood
        return False
    return _root_condition(np.roots(coef[::-1]), tol)


@dataclass
class StabilityGrid:
    """Boolean stability mask over a rectangle of the z-plane.

    mask[i, j] is the verdict at re[i] = re_lo + (i+0.5)*dre,
    im[j] = im_lo + (j+0.5)*dim (cell centres).
    """

    k: int
    beta: float
    re_lo: float
    re_hi: float
    im_lo: float
    im_hi: float
    nx: int
    ny: int
    mask: np.ndarray
    area: float

    @property
    def window(self):
        return (self.re_lo, self.re_hi, self.im_lo, self.im_hi)


def _batched_max_root_modulus(coef_cols, lead):
    """Max root modulus per point for stacked polynomials.

    coef_cols: (npts, k) lower coefficients, lead: (npts,) leading ones.
    Returns (rmax, roots) with roots shaped (npts, k).
    """
    npts, k = coef_cols.shape
    comp = np.zeros((npts, k, k), dtype=complex)
    idx = np.arange(1, k)
    comp[:, idx, idx - 1] = 1.0
    with np.errstate(divide="ignore", invalid="ignore"):
        comp[:, :, -1] = -coef_cols / lead[:, None]
    roots = np.linalg.eigvals(comp)
    rmax = np.abs(roots).max(axis=1)
    return rmax, roots


def scan_region(k, beta, window=DEFAULT_WINDOW, resolution=DEFAULT_RESOLUTION,
                tol=ROOT_TOL):
    """Evaluate the root condition on a cell-centred grid and sum the stable area."""
    re_lo, re_hi, im_lo, im_hi = (float(v) for v in window)
    nx, ny = (int(v) for v in resolution)
    if not (re_lo < re_hi and im_lo < im_hi and nx > 0 and ny > 0):
        raise ValueError("window must be nonempty and resolution positive")

    rec = scheme_coefficients(k, beta)
    a, b, _ = rec.arrays()

    dre = (re_hi - re_lo) / nx
    dim = (im_hi - im_lo) / ny
    re = re_lo + (np.arange(nx) + 0.5) * dre
    im = im_lo + (np.arange(ny) + 0.5) * dim
    z = (re[:, None] + 1j * im[None, :]).ravel()

    mask = np.zeros(z.size, dtype=bool)
    for start in range(0, z.size, _EIG_CHUNK):
        zc = z[start:start + _EIG_CHUNK]
        # pi coefficients: column q is a[q] - z*b[q-1] (a[0] is z-free)
        cols = np.empty((zc.size, k), dtype=complex)
        cols[:, 0] = a[0]
        cols[:, 1:] = a[1:k] - zc[:, None] * b[: k - 1]
        lead = a[k] - zc * b[k - 1]

        scale = np.abs(cols).max(axis=1)
        degenerate = np.abs(lead) <= 1e-14 * np.maximum(scale, 1.0)
        rmax, roots = _batched_max_root_modulus(cols, lead)
        rmax[degenerate] = np.inf

        stable = rmax <= 1.0 - tol
        borderline = ~stable & (rmax <= 1.0 + tol)
        for i in np.nonzero(borderline)[0]:
            stable[i] = _root_condition(roots[i], tol)
        mask[start:start + _EIG_CHUNK] = stable

    mask = mask.reshape(nx, ny)
    area = float(mask.sum()) * dre * dim
    return StabilityGrid(k=k, beta=float(beta), re_lo=re_lo, re_hi=re_hi,
                         im_lo=im_lo, im_hi=im_hi, nx=nx, ny=ny,
                         mask=mask, area=area)
