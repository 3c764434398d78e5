"""Two-step semi-implicit Fourier scheme for the damped BBM-KP equation.

In Fourier space the equation reads

    u_hat_t = -i lam u_hat - i G / (1 + xi^2),
    lam = (xi^2 + gamma eta^2) / (xi (1 + xi^2)),
    G   = alpha xi F[u^{p+1} / (p+1)] - i F[a u].

The linear part is treated by the trapezoidal rule over ``2 dt`` and ``G`` by
leapfrog, which gives ``u^{k+1} = H1 u^{k-1} + W1 G(u^k)``.  The first step uses
the one-step variant ``u^1 = H2 u^0 + W2 G(u^0)``.

Zero-mode policy: ``lam`` is undefined at ``xi = 0``.  Modes ``(0, n != 0)``
are removed (the x-mean of every solution vanishes for each y) and the
Nyquist row and column are removed as well.  The grid mean ``(0, 0)`` is kept
and evolves by its own balance ``d/dt mean(u) = -mean(a u)``, which is the
``lam = 0`` limit of the same symbols.
"""

from __future__ import annotations

import logging
from collections.abc import Callable, Iterable
from dataclasses import dataclass

import numpy as np

from .diagnostics import TimeSeries
from .errors import BlowUpError, GridMismatchError
from .model import ModelParams, damping_field
from .spectral import (
    GridSpec,
    PaddedTransforms,
    RealField,
    SpectralField,
    centered_from_half,
    half_from_centered,
)

__all__ = [
    "SchemeSymbols",
    "StepperState",
    "RunResult",
    "mode_mask",
    "project_modes",
    "build_symbols",
    "nonlinear_rhs",
    "step_bootstrap",
    "step_two",
    "run",
    "Stepper",
]

log = logging.getLogger(__name__)

BLOWUP_THRESHOLD = 1e12

Observer = Callable[[int, float, RealField], None]


def mode_mask(grid: GridSpec) -> np.ndarray:
    """Boolean mask of the modes kept by the zero-mode policy."""
    mx = grid.mode_x[:, None]
    ny = grid.mode_y[None, :]
    keep = (mx != 0) | (ny == 0)
    keep &= mx != -grid.Nx // 2
    keep &= ny != -grid.Ny // 2
    return np.broadcast_to(keep, grid.shape).copy()


def project_modes(F: SpectralField) -> SpectralField:
    return SpectralField(F.grid, np.where(mode_mask(F.grid), F.coeffs, 0.0))


@dataclass(frozen=True, eq=False)
class SchemeSymbols:
    grid: GridSpec
    gamma: int
    dt: float
    H1: np.ndarray
    W1: np.ndarray
    H2: np.ndarray
    W2: np.ndarray


def build_symbols(grid: GridSpec, gamma: int, dt: float) -> SchemeSymbols:
    if not dt > 0:
        raise ValueError(f"dt must be > 0, got {dt!r}")
    xi = grid.xi[:, None]
    eta = grid.eta[None, :]
    with np.errstate(divide="ignore", invalid="ignore"):
        lam = (xi**2 + gamma * eta**2) / (xi * (1 + xi**2))
    lam = np.where(grid.mode_x[:, None] == 0, 0.0, lam)
    inertia = 1.0 + xi**2
    d1 = 1 + 1j * dt * lam
    d2 = 1 + 0.5j * dt * lam
    keep = mode_mask(grid)
    H1 = np.where(keep, (1 - 1j * dt * lam) / d1, 0.0)
    W1 = np.where(keep, -(2j * dt / inertia) / d1, 0.0)
    H2 = np.where(keep, (1 - 0.5j * dt * lam) / d2, 0.0)
    W2 = np.where(keep, -(1j * dt / inertia) / d2, 0.0)
    return SchemeSymbols(grid, int(gamma), float(dt), H1, W1, H2, W2)


class _Rhs:
    """Evaluates G in half-spectrum layout with 3/2-rule products."""

    def __init__(self, grid: GridSpec, params: ModelParams, damping: RealField | None = None):
        self.grid = grid
        self.alpha = float(params.alpha)
        self.p = params.p
        self.T = PaddedTransforms(grid)
        ny_half = grid.Ny // 2 + 1
        self.xi = grid.xi[:, None]
        self.mask = mode_mask(grid)[:, :ny_half]
        if damping is None:
            if params.damping.is_constant:
                self.a_const, self.a_padded = params.damping.constant_value, None
                self.a_field = damping_field(params.damping, grid)
            else:
                damping = damping_field(params.damping, grid)
        if damping is not None:
            if damping.grid != grid:
                raise GridMismatchError("damping field lives on a different grid")
            self.a_field = damping
            vals = damping.values
            if np.all(vals == vals.flat[0]):
                self.a_const, self.a_padded = float(vals.flat[0]), None
            else:
                self.a_const = None
                self.a_padded = self.T.to_padded(self.T.from_grid(vals))

    def __call__(self, ch: np.ndarray) -> np.ndarray:
        T = self.T
        up = None
        g = np.zeros_like(ch)
        if self.alpha != 0.0:
            up = T.to_padded(ch)
            power = T.from_padded(up * up)
            for _ in range(self.p - 1):
                power = T.from_padded(T.to_padded(power) * up)
            g += (self.alpha / (self.p + 1)) * self.xi * power
        if self.a_const is not None:
            if self.a_const != 0.0:
                g -= 1j * self.a_const * ch
        else:
            if up is None:
                up = T.to_padded(ch)
            g -= 1j * T.from_padded(self.a_padded * up)
        g[~self.mask] = 0.0
        return g


def _half(F: SpectralField) -> np.ndarray:
    return half_from_centered(F.coeffs)


def _full(ch: np.ndarray, grid: GridSpec) -> SpectralField:
    return SpectralField(grid, centered_from_half(ch, grid.shape))


def nonlinear_rhs(curr: SpectralField, params: ModelParams, damping: RealField | None = None) -> SpectralField:
    """G = alpha xi F[u^{p+1}/(p+1)] - i F[a u], with the zero-mode policy applied.

    G is anti-Hermitian for real u, so the full spectrum is rebuilt from iG.
    """
    g = _Rhs(curr.grid, params, damping)(_half(curr))
    return SpectralField(curr.grid, -1j * centered_from_half(1j * g, curr.grid.shape))


@dataclass(frozen=True, eq=False)
class StepperState:
    """Two consecutive time levels; ``prev`` is None before the first step."""

    prev: SpectralField | None
    curr: SpectralField
    k: int
    t: float


def _check_blowup(ch: np.ndarray, k: int, t: float) -> None:
    peak = float(np.max(np.abs(ch)))
    if not np.isfinite(peak) or peak > BLOWUP_THRESHOLD:
        raise BlowUpError(k, t, peak)


def _half_symbols(symbols: SchemeSymbols):
    h = symbols.grid.Ny // 2 + 1
    return tuple(s[:, :h] for s in (symbols.H1, symbols.W1, symbols.H2, symbols.W2))


def step_bootstrap(state: StepperState, symbols: SchemeSymbols, params: ModelParams,
                   damping: RealField | None = None) -> StepperState:
    if state.k != 0:
        raise ValueError("the one-step start applies only at k = 0")
    grid = state.curr.grid
    _, _, H2, W2 = _half_symbols(symbols)
    c0 = _half(state.curr)
    c1 = H2 * c0 + W2 * _Rhs(grid, params, damping)(c0)
    _check_blowup(c1, 1, symbols.dt)
    return StepperState(state.curr, _full(c1, grid), 1, symbols.dt)


def step_two(state: StepperState, symbols: SchemeSymbols, params: ModelParams,
             damping: RealField | None = None) -> StepperState:
    if state.k < 1 or state.prev is None:
        raise ValueError("the two-step update needs k >= 1")
    grid = state.curr.grid
    H1, W1, _, _ = _half_symbols(symbols)
    new = H1 * _half(state.prev) + W1 * _Rhs(grid, params, damping)(_half(state.curr))
    k = state.k + 1
    _check_blowup(new, k, k * symbols.dt)
    return StepperState(state.curr, _full(new, grid), k, k * symbols.dt)


@dataclass(frozen=True, eq=False)
class RunResult:
    series: TimeSeries
    final: RealField


class Stepper:
    """Time loop in half-spectrum layout.

    ``energy`` and ``l2`` are evaluated spectrally (Parseval) at every level,
    which is what the dissipation residual needs; physical fields are only
    formed at sample steps.
    """

    def __init__(self, grid: GridSpec, params: ModelParams, dt: float, damping: RealField | None = None):
        self.grid = grid
        self.params = params
        self.dt = float(dt)
        self.symbols = build_symbols(grid, params.gamma, dt)
        self.H1, self.W1, self.H2, self.W2 = _half_symbols(self.symbols)
        self.rhs = _Rhs(grid, params, damping)
        self.a_field = self.rhs.a_field
        ny_half = grid.Ny // 2 + 1
        self.mask = mode_mask(grid)[:, :ny_half]
        w = np.full(ny_half, 2.0)
        w[0] = 1.0
        w[-1] = 1.0
        self._w = w[None, :] * grid.area
        self._w_energy = self._w * (1.0 + grid.xi[:, None] ** 2)

    def project(self, u: np.ndarray) -> np.ndarray:
        ch = self.rhs.T.from_grid(np.asarray(u, dtype=float))
        ch[~self.mask] = 0.0
        return ch

    def to_grid(self, ch: np.ndarray) -> np.ndarray:
        return self.rhs.T.to_grid(ch)

    def l2_sq(self, ch: np.ndarray) -> float:
        return float(np.sum(self._w * (ch.real**2 + ch.imag**2)))

    def energy(self, ch: np.ndarray) -> float:
        return 0.5 * float(np.sum(self._w_energy * (ch.real**2 + ch.imag**2)))

    def damping_integral(self, ch: np.ndarray, u: np.ndarray | None = None) -> float:
        if self.rhs.a_const is not None:
            return self.rhs.a_const * self.l2_sq(ch)
        if u is None:
            u = self.to_grid(ch)
        return float(self.grid.dx * self.grid.dy * np.sum(self.a_field.values * u**2))

    def first(self, c0: np.ndarray) -> np.ndarray:
        return self.H2 * c0 + self.W2 * self.rhs(c0)

    def advance(self, prev: np.ndarray, curr: np.ndarray) -> np.ndarray:
        return self.H1 * prev + self.W1 * self.rhs(curr)

    def run(self, u0: RealField, t_end: float, sample_every: int = 1,
            observers: Iterable[Observer] = (), observe_steps: Iterable[int] = (),
            rebootstrap_every: int | None = None) -> RunResult:
        if u0.grid != self.grid:
            raise GridMismatchError("initial field lives on a different grid")
        if not t_end >= 0:
            raise ValueError(f"t_end must be >= 0, got {t_end!r}")
        if sample_every < 1:
            raise ValueError("sample_every must be >= 1")
        dt = self.dt
        nsteps = int(round(t_end / dt))
        if abs(nsteps * dt - t_end) > 1e-9 * max(1.0, t_end):
            raise ValueError(f"t_end={t_end!r} is not a whole number of steps dt={dt!r}")
        observers = list(observers)
        observe_steps = set(observe_steps)

        times, l2s, energies, resid = [], [], [], []
        pending = None  # (D_k, E_{k-1}) awaiting E_{k+1}

        def partial_series():
            n = len(resid)
            return TimeSeries(times[:n], l2s[:n], energies[:n], {"diss_residual": resid})

        prev = None
        curr = self.project(u0.values)
        e_prev, e_curr = None, self.energy(curr)
        k = 0
        restart_at = 0
        try:
            while True:
                sample = k % sample_every == 0 or k == nsteps
                if sample or k in observe_steps:
                    u = self.to_grid(curr)
                    if sample:
                        times.append(k * dt)
                        l2s.append(np.sqrt(self.l2_sq(curr)))
                        energies.append(e_curr)
                        pending = (self.damping_integral(curr, u), e_prev)
                    if observers:
                        snap = RealField(self.grid, u)
                        for obs in observers:
                            obs(k, k * dt, snap)

                # one level past t_end is computed only to close the last residual
                if k == nsteps and pending is None:
                    break
                if prev is None or (rebootstrap_every and k - restart_at >= rebootstrap_every):
                    new = self.first(curr)
                    restart_at = k
                else:
                    new = self.advance(prev, curr)
                _check_blowup(new, k + 1, (k + 1) * dt)
                e_new = self.energy(new)

                if pending is not None:
                    d, e_before = pending
                    if e_before is None:
                        rate = (e_new - e_curr) / dt
                    else:
                        rate = (e_new - e_before) / (2 * dt)
                    resid.append(abs(rate + d) / max(1.0, d))
                    pending = None
                if k == nsteps:
                    break
                prev, curr = curr, new
                e_prev, e_curr = e_curr, e_new
                k += 1
        except BlowUpError as exc:
            exc.partial = partial_series()
            log.error("%s", exc)
            raise
        return RunResult(partial_series(), RealField(self.grid, self.to_grid(curr)))


def run(u0: RealField, params: ModelParams, grid: GridSpec, dt: float, t_end: float,
        sample_every: int = 1, observers: Iterable[Observer] = (), *,
        damping: RealField | None = None, rebootstrap_every: int | None = None,
        observe_steps: Iterable[int] = ()) -> RunResult:
    """Project ``u0``, take the one-step start, then iterate the two-step scheme.

    Returns the sampled :class:`TimeSeries` (``t``, ``l2``, ``energy`` and the
    ``diss_residual`` channel) and the field at ``t_end``.
    """
    stepper = Stepper(grid, params, dt, damping)
    return stepper.run(u0, t_end, sample_every, observers, observe_steps, rebootstrap_every)
