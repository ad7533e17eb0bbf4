"""Shifted-IMEX time stepper for u_t + L u + G[u] = f with diagonal L.

The state is any numpy array living in a basis where L is diagonal (Fourier
coefficients for the spectral problems, plain vectors for scalar tests).
One step solves

    (a[k]/dt + b[k-1] * L) u^{n+1} = f(t^{n+beta})
        - (1/dt) sum_{q<k} a[q] u^{n+1-k+q}
        - L sum_{q<k-1} b[q] u^{n+2-k+q}
        - G(sum_{q<k-1+1} c[q] u^{n+1-k+q})

which is a per-mode division.  k = 1 (classical backward-Euler IMEX) is
supported as the baseline scheme; orders 2..5 come from `coeffs`.

The zero mode of a periodic Laplacian gives L = 0 for the mean; the solve
divides by a[k]/dt > 0 there, so semidefinite symbols are accepted.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .coeffs import SchemeCoefficients, scheme_coefficients

BLOWUP_LIMIT = 1e10


class BlowUpError(RuntimeError):
    """Raised when the state leaves the finite range; carries diagnostics."""

    def __init__(self, step, time, last_state, summary=None):
        super().__init__(f"solution blew up at step {step} (t = {time:g})")
        self.step = step
        self.time = time
        self.last_state = last_state
        self.summary = summary


@dataclass
class ProblemSpec:
    """Right-hand-side description: diagonal linear symbol, explicit G, source."""

    linear_symbol: np.ndarray
    nonlinear: Optional[Callable[[np.ndarray], np.ndarray]] = None
    source: Optional[Callable[[float], np.ndarray]] = None
    u0: Optional[np.ndarray] = None

    def __post_init__(self):
        self.linear_symbol = np.asarray(self.linear_symbol)
        if np.any(self.linear_symbol < 0):
            raise ValueError("linear symbol must be nonnegative (L positive semidefinite)")

    def rhs(self, t, u):
        out = -self.linear_symbol * u
        if self.nonlinear is not None:
            out = out - self.nonlinear(u)
        if self.source is not None:
            out = out + self.source(t)
        return out


@dataclass
class IntegratorState:
    """Ring buffer of the k most recent levels (oldest first) plus step metadata."""

    history: tuple
    n: int
    dt: float
    coefficients: SchemeCoefficients

    @property
    def newest(self):
        return self.history[-1]

    @property
    def time(self):
        return self.n * self.dt


def first_order_coefficients() -> SchemeCoefficients:
    """Classical backward-Euler IMEX baseline (implicit L, explicit G)."""
    return SchemeCoefficients(k=1, beta=1.0, a=(-1.0, 1.0), b=(1.0,),
                              c=(1.0,), d=(1.0,), eta=0.0)


def _resolve_coefficients(k, beta) -> SchemeCoefficients:
    if k == 1:
        if float(beta) != 1.0:
            raise ValueError("the first-order baseline only exists at beta = 1")
        return first_order_coefficients()
    return scheme_coefficients(k, beta)


def _check_finite(u, step, t, summary=None):
    if not np.all(np.isfinite(u)) or np.max(np.abs(u)) > BLOWUP_LIMIT:
        raise BlowUpError(step, t, None, summary)


def _rk4_history(spec, k, dt, substeps):
    levels = [np.array(spec.u0, copy=True)]
    u = levels[0]
    h = dt / substeps
    for i in range(k - 1):
        t = i * dt
        for j in range(substeps):
            tj = t + j * h
            k1 = spec.rhs(tj, u)
            k2 = spec.rhs(tj + h / 2, u + h / 2 * k1)
            k3 = spec.rhs(tj + h / 2, u + h / 2 * k2)
            k4 = spec.rhs(tj + h, u + h * k3)
            u = u + h / 6 * (k1 + 2 * k2 + 2 * k3 + k4)
            _check_finite(u, i, tj + h)
        levels.append(u)
    return levels


def _imex1_history(spec, k, dt, substeps):
    # backward-Euler IMEX substeps: implicit in L, explicit in G; the
    # unconditional linear stability is what makes this usable on the
    # fourth-order (conserved-flow) symbol where explicit starters are not
    levels = [np.array(spec.u0, copy=True)]
    u = levels[0]
    h = dt / substeps
    denom = 1.0 / h + spec.linear_symbol
    for i in range(k - 1):
        t = i * dt
        for j in range(substeps):
            rhs = u / h
            if spec.nonlinear is not None:
                rhs = rhs - spec.nonlinear(u)
            if spec.source is not None:
                rhs = rhs + spec.source(t + (j + 1) * h)
            u = rhs / denom
            _check_finite(u, i, t + (j + 1) * h)
        levels.append(u)
    return levels


def initialize(spec: ProblemSpec, k, beta, dt, starter="rk4",
               rk4_substeps=10) -> IntegratorState:
    """Fill the k-level history.

    starter: a callable t -> state for exact starts, "rk4" for classical
    explicit Runge-Kutta substepping of the full right-hand side
    (`rk4_substeps` substeps per dt; raise it when the linear symbol is stiff,
    since the starter is fully explicit), or "imex1" for backward-Euler IMEX
    substeps when the symbol is too stiff for any explicit starter.
    """
    if dt <= 0:
        raise ValueError("dt must be positive")
    rec = _resolve_coefficients(k, beta)
    if spec.u0 is None or not np.all(np.isfinite(spec.u0)):
        raise ValueError("initial state must be finite")
    if callable(starter):
        levels = [np.asarray(starter(i * dt)) for i in range(k)]
    elif starter == "rk4":
        if k == 5:
            warnings.warn("rk4 starter is fourth-order; with k=5 make dt small "
                          "enough that the starter error stays below the scheme error")
        levels = _rk4_history(spec, k, dt, rk4_substeps)
    elif starter == "imex1":
        levels = _imex1_history(spec, k, dt, rk4_substeps)
    else:
        raise ValueError(f"unknown starter {starter!r}")
    for lv in levels:
        if not np.all(np.isfinite(lv)):
            raise ValueError("starter produced non-finite history")
    a_lead = float(rec.a[-1])
    b_lead = float(rec.b[-1])
    denom_min = a_lead / dt + b_lead * float(np.min(spec.linear_symbol))
    if denom_min <= 0:
        raise ValueError("implicit solve is not positive definite "
                         f"(a_k/dt + b_(k-1)*lambda_min = {denom_min:g})")
    return IntegratorState(history=tuple(levels), n=k - 1, dt=dt, coefficients=rec)


def step(state: IntegratorState, spec: ProblemSpec) -> IntegratorState:
    """Advance one level; returns a new state (history rotated)."""
    rec = state.coefficients
    k = rec.k
    a = rec.a
    b = rec.b
    c = rec.c
    dt = state.dt
    hist = state.history

    rhs = np.zeros_like(hist[-1] + 0.0)
    for q in range(k):
        rhs -= (float(a[q]) / dt) * hist[q]
    L = spec.linear_symbol
    for q in range(k - 1):
        rhs -= float(b[q]) * (L * hist[q + 1])
    if spec.nonlinear is not None:
        mix = sum(float(c[q]) * hist[q] for q in range(k))
        rhs -= spec.nonlinear(mix)
    if spec.source is not None:
        rhs += spec.source((state.n + float(rec.beta)) * dt)

    denom = float(a[k]) / dt + float(b[k - 1]) * L
    new = rhs / denom
    try:
        _check_finite(new, state.n + 1, (state.n + 1) * dt)
    except BlowUpError as exc:
        exc.last_state = hist[-1]
        raise
    return IntegratorState(history=hist[1:] + (new,), n=state.n + 1,
                           dt=dt, coefficients=rec)


@dataclass
class TrajectorySummary:
    """Observer time series plus run outcome."""

    times: list = field(default_factory=list)
    series: dict = field(default_factory=dict)
    final_state: Optional[np.ndarray] = None
    steps: int = 0
    diverged: bool = False
    blowup_step: Optional[int] = None


def run(spec: ProblemSpec, k, beta, dt, T, observers=None, stride=1,
        starter="rk4", rk4_substeps=10, raise_on_blowup=True) -> TrajectorySummary:
    """Integrate to time T, recording observers every `stride` steps.

    On blow-up the partial summary is attached to the raised BlowUpError
    (or returned directly with `diverged=True` when raise_on_blowup=False).
    """
    nsteps = int(round(T / dt))
    if nsteps < k:
        raise ValueError("T must cover at least k steps")
    observers = observers or {}
    summary = TrajectorySummary(series={name: [] for name in observers})

    def observe(state_arr, t):
        summary.times.append(t)
        for name, fn in observers.items():
            summary.series[name].append(fn(state_arr, t))

    try:
        state = initialize(spec, k, beta, dt, starter=starter,
                           rk4_substeps=rk4_substeps)
        for i, lv in enumerate(state.history):
            if i % stride == 0:
                observe(lv, i * dt)
        while state.n < nsteps:
            state = step(state, spec)
            if state.n % stride == 0 or state.n == nsteps:
                observe(state.newest, state.time)
    except BlowUpError as exc:
        summary.diverged = True
        summary.blowup_step = exc.step
        summary.final_state = exc.last_state
        summary.steps = exc.step
        exc.summary = summary
        if raise_on_blowup:
            raise
        return summary
    summary.final_state = state.newest
    summary.steps = state.n
    return summary
