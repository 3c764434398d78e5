"""Norms, the H^1_x energy, the dissipation balance and decay-rate fits."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .spectral import RealField, SpectralField, derivative_x, forward_transform, inverse_transform

__all__ = [
    "TimeSeries",
    "DecayFit",
    "l2_norm",
    "l2_norm_spectral",
    "energy",
    "damping_integral",
    "dissipation_residual",
    "decay_fit",
]


@dataclass(eq=False)
class TimeSeries:
    """Sampled diagnostics of a run.

    ``extra`` holds further named channels of the same length, e.g.
    ``"diss_residual"`` (relative violation of dE/dt = -int a u^2).
    """

    times: np.ndarray
    l2: np.ndarray
    energy: np.ndarray
    extra: dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        self.times = np.asarray(self.times, dtype=float)
        self.l2 = np.asarray(self.l2, dtype=float)
        self.energy = np.asarray(self.energy, dtype=float)
        self.extra = {k: np.asarray(v, dtype=float) for k, v in self.extra.items()}
        n = len(self.times)
        for name, arr in [("l2", self.l2), ("energy", self.energy), *self.extra.items()]:
            if arr.shape != (n,):
                raise ValueError(f"channel {name!r} has length {arr.shape}, expected {n}")
            if not np.all(np.isfinite(arr)):
                raise ValueError(f"channel {name!r} contains non-finite values")
        if n > 1 and not np.all(np.diff(self.times) > 0):
            raise ValueError("times must be strictly increasing")

    def __len__(self):
        return len(self.times)

    def channel(self, name: str) -> np.ndarray:
        if name in ("l2", "energy"):
            return getattr(self, name)
        return self.extra[name]


@dataclass(frozen=True)
class DecayFit:
    """Least-squares line through ``log(channel)`` against ``t``.

    ``nu`` is minus the slope (positive for decay).  When the channel is
    constant over the window ``r_squared`` is reported as 0 and
    ``zero_variance`` is set.
    """

    nu: float
    intercept: float
    r_squared: float
    window: tuple[float, float]
    n_samples: int
    zero_variance: bool = False


def l2_norm(f: RealField) -> float:
    g = f.grid
    return float(np.sqrt(g.dx * g.dy * np.sum(f.values**2)))


def l2_norm_spectral(F: SpectralField) -> float:
    """L2 norm through Parseval: sqrt(Lx Ly sum |u_hat|^2)."""
    return float(np.sqrt(F.grid.area * np.sum(np.abs(F.coeffs) ** 2)))


def energy(f: RealField) -> float:
    """E = (||u||^2 + ||u_x||^2) / 2."""
    ux = inverse_transform(derivative_x(forward_transform(f)))
    return 0.5 * (l2_norm(f) ** 2 + l2_norm(ux) ** 2)


def damping_integral(f: RealField, a: RealField) -> float:
    """Rectangle-rule value of  int a u^2 dx dy."""
    g = f.grid
    return float(g.dx * g.dy * np.sum(a.values * f.values**2))


def dissipation_residual(f_prev: RealField, f: RealField, f_next: RealField, a: RealField, dt: float) -> float:
    """Relative violation of dE/dt = -int a u^2, by a centred difference at ``f``."""
    dE = (energy(f_next) - energy(f_prev)) / (2 * dt)
    d = damping_integral(f, a)
    return abs(dE + d) / max(1.0, d)


def decay_fit(series: TimeSeries, window: tuple[float, float] | None = None, channel: str = "l2") -> DecayFit:
    t = series.times
    if window is None:
        t0, t1 = t[0] + 0.2 * (t[-1] - t[0]), t[-1]
    else:
        t0, t1 = window
    sel = (t >= t0 - 1e-12) & (t <= t1 + 1e-12)
    if sel.sum() < 10:
        raise ValueError(f"decay fit needs >= 10 samples in window, got {int(sel.sum())}")
    y = series.channel(channel)[sel]
    if np.any(y <= 0):
        raise ValueError("decay fit needs strictly positive values in the window")
    ts, logy = t[sel], np.log(y)
    slope, intercept = np.polyfit(ts, logy, 1)
    ss_tot = float(np.sum((logy - logy.mean()) ** 2))
    ss_res = float(np.sum((logy - (slope * ts + intercept)) ** 2))
    zero_var = ss_tot <= 1e-28 * max(1.0, float(np.sum(logy**2)))
    if zero_var:
        r2, slope = 0.0, 0.0
    else:
        r2 = min(1.0, max(0.0, 1.0 - ss_res / ss_tot))
    return DecayFit(
        nu=float(-slope), intercept=float(intercept), r_squared=r2,
        window=(float(ts[0]), float(ts[-1])), n_samples=int(sel.sum()), zero_variance=zero_var,
    )
