"""2D periodic Fourier pseudo-spectral discretisation of the phase-field flows.

The gradient flow of E[u] = int 1/2|grad u|^2 + (1 - u^2)^2/(4 eps^2) reads

    u_t = -m (-lap)^alpha ( -lap u - u(1 - u^2)/eps^2 ),   alpha = 0 or 1,

(alpha = 0: nonconserved/L2 flow, alpha = 1: conserved/H^-1 flow).  In the
splitting u_t + L u + G[u] = f used by the stepper,

    L      = m (-lap)^(alpha+1)            (diagonal symbol m |xi|^(2alpha+2)),
    G[u]   = -m (-lap)^alpha [ u(1-u^2)/eps^2 ].

Fields are nx-by-ny real arrays on a uniform grid; no dealiasing by default
(an optional 2/3-rule mask is available for robustness experiments).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np


@dataclass(frozen=True)
class PhaseFieldParams:
    mobility: float
    eps: float
    alpha: int
    source: Optional[Callable] = None

    def __post_init__(self):
        if self.mobility <= 0 or self.eps <= 0:
            raise ValueError("mobility and eps must be positive")
        if self.alpha not in (0, 1):
            raise ValueError("alpha must be 0 (nonconserved) or 1 (conserved)")


class Grid2D:
    """Uniform periodic grid on [x0, x0+Lx) x [y0, y0+Ly); nx, ny even."""

    def __init__(self, nx, ny, Lx, Ly, x0=0.0, y0=0.0):
        if nx % 2 or ny % 2:
            raise ValueError("grid sizes must be even")
        self.nx, self.ny = nx, ny
        self.Lx, self.Ly = float(Lx), float(Ly)
        self.x0, self.y0 = float(x0), float(y0)
        self.dx = self.Lx / nx
        self.dy = self.Ly / ny
        x = self.x0 + self.dx * np.arange(nx)
        y = self.y0 + self.dy * np.arange(ny)
        self.X, self.Y = np.meshgrid(x, y, indexing="ij")
        kx = 2.0 * np.pi * np.fft.fftfreq(nx, d=self.dx)
        ky = 2.0 * np.pi * np.fft.fftfreq(ny, d=self.dy)
        self.KX, self.KY = np.meshgrid(kx, ky, indexing="ij")
        self.K2 = self.KX ** 2 + self.KY ** 2

    @property
    def cell_area(self):
        return self.dx * self.dy

    def dealias_mask(self):
        # 2/3-rule: zero the top third of the spectrum in each direction
        mx = np.abs(np.fft.fftfreq(self.nx, d=1.0 / self.nx)) <= self.nx // 3
        my = np.abs(np.fft.fftfreq(self.ny, d=1.0 / self.ny)) <= self.ny // 3
        return np.outer(mx, my)


@dataclass
class SpectralField2D:
    """Real field with physical values; Fourier view on demand."""

    grid: Grid2D
    values: np.ndarray

    def fourier(self):
        return np.fft.fft2(self.values)

    @classmethod
    def from_fourier(cls, grid, hat):
        return cls(grid, np.fft.ifft2(hat).real)


def symbol_at(params: PhaseFieldParams, xi_x, xi_y) -> float:
    """Implicit symbol m |xi|^(2(alpha+1)) at one continuous mode."""
    k2 = xi_x ** 2 + xi_y ** 2
    return params.mobility * k2 ** (params.alpha + 1)


def linear_symbol(params: PhaseFieldParams, grid: Grid2D) -> np.ndarray:
    return params.mobility * grid.K2 ** (params.alpha + 1)


def _double_well_slope(params, u):
    return (u * (1.0 - u * u)) / params.eps ** 2


def nonlinear_term(params: PhaseFieldParams, u: SpectralField2D) -> SpectralField2D:
    """G[u] = -m (-lap)^alpha [ u(1-u^2)/eps^2 ] evaluated pseudo-spectrally."""
    w = _double_well_slope(params, u.values)
    if params.alpha == 0:
        return SpectralField2D(u.grid, -params.mobility * w)
    hat = np.fft.fft2(w)
    hat *= -params.mobility * u.grid.K2
    return SpectralField2D(u.grid, np.fft.ifft2(hat).real)


def nonlinear_fourier(params: PhaseFieldParams, grid: Grid2D,
                      dealias: bool = False):
    """Fourier-space closure for the stepper: u_hat -> G[u]_hat."""
    mask = grid.dealias_mask() if dealias else None
    mult = -params.mobility * (grid.K2 if params.alpha == 1 else 1.0)

    def gee(u_hat):
        u = np.fft.ifft2(u_hat).real
        hat = np.fft.fft2(_double_well_slope(params, u))
        if mask is not None:
            hat *= mask
        return mult * hat

    return gee


def free_energy(params: PhaseFieldParams, u: SpectralField2D) -> float:
    """Spectral gradient energy plus grid quadrature of the double well."""
    hat = u.fourier()
    ux = np.fft.ifft2(1j * u.grid.KX * hat).real
    uy = np.fft.ifft2(1j * u.grid.KY * hat).real
    grad = 0.5 * (ux ** 2 + uy ** 2)
    well = (1.0 - u.values ** 2) ** 2 / (4.0 * params.eps ** 2)
    return float((grad + well).sum() * u.grid.cell_area)


def radius_of_circle(u: SpectralField2D, threshold: float = 0.0) -> float:
    """Radius sqrt(area / pi) of the super-level set {u > threshold}.

    The area comes from row-wise scans with linear interpolation of the
    crossing positions between adjacent samples (periodic in x).
    """
    grid = u.grid
    v = u.values - threshold
    pos = v > 0.0
    frac_pos = pos.mean()
    if frac_pos == 0.0:
        raise ValueError("level set is empty: no interface to measure")
    if frac_pos > 0.95:
        raise ValueError("level set covers more than 95% of the domain")
    area = 0.0
    dx = grid.dx
    for j in range(grid.ny):
        row = v[:, j]
        nxt = np.roll(row, -1)
        length = dx * float(np.count_nonzero(row > 0.0))
        # linear-interpolation correction at each sign change
        change = (row > 0.0) != (nxt > 0.0)
        for i in np.nonzero(change)[0]:
            a, b = row[i], nxt[i]
            frac = a / (a - b)  # crossing offset from sample i, in cells
            if a > 0.0:
                length += dx * (frac - 1.0)  # interval shorter than full cell
            else:
                length += dx * (1.0 - frac)
        area += length * grid.dy
    return math.sqrt(area / math.pi)


# Manufactured solution u = exp(sin(pi x) sin(pi y)) sin(t) on (0, 2)^2 for
# the nonconserved flow with m = eps = 0.2: source picked so it solves the PDE.

MANUFACTURED_PARAMS = PhaseFieldParams(mobility=0.2, eps=0.2, alpha=0)
MANUFACTURED_DOMAIN = (2.0, 2.0)


def manufactured_solution(grid: Grid2D, t: float) -> np.ndarray:
    s = np.sin(np.pi * grid.X) * np.sin(np.pi * grid.Y)
    return np.exp(s) * math.sin(t)


def manufactured_source(grid: Grid2D, t: float,
                        params: PhaseFieldParams = MANUFACTURED_PARAMS) -> np.ndarray:
    """f = u_t + L u + G[u] for the manufactured profile, analytically on the grid."""
    if params.alpha != 0:
        raise ValueError("manufactured source is defined for the nonconserved flow")
    pi = np.pi
    s = np.sin(pi * grid.X) * np.sin(pi * grid.Y)
    sx = pi * np.cos(pi * grid.X) * np.sin(pi * grid.Y)
    sy = pi * np.sin(pi * grid.X) * np.cos(pi * grid.Y)
    es = np.exp(s)
    u = es * math.sin(t)
    lap = es * math.sin(t) * (-2.0 * pi ** 2 * s + sx ** 2 + sy ** 2)
    m, eps2 = params.mobility, params.eps ** 2
    return es * math.cos(t) - m * lap - (m / eps2) * u * (1.0 - u * u)
