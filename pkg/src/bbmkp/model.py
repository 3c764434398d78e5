"""Model parameters, damping coefficients and initial data."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .spectral import GridSpec, RealField

__all__ = ["DampingProfile", "ModelParams", "damping_field", "gaussian_initial", "cosine_ramp"]

DAMPING_KINDS = ("none", "constant", "localized")


@dataclass(frozen=True)
class DampingProfile:
    """Damping coefficient a(x, y).

    ``localized`` means ``a = lambda0 * (1 - chi)`` where ``chi`` is a smoothed
    indicator of ``omega = (-B, B) x (C, D)``: it equals 1 at distance at least
    ``smoothing_width`` inside omega and 0 outside omega, with cosine ramps in
    between.  Hence ``a == lambda0`` everywhere outside omega.
    """

    kind: str = "none"
    a0: float = 0.0
    lambda0: float = 1.0
    B: float = 1.0
    C: float = -1.0
    D: float = 1.0
    smoothing_width: float = 0.5

    def __post_init__(self):
        if self.kind not in DAMPING_KINDS:
            raise ValueError(f"damping kind must be one of {DAMPING_KINDS}, got {self.kind!r}")
        if self.kind == "constant" and not self.a0 >= 0:
            raise ValueError(f"a0 must be >= 0, got {self.a0!r}")
        if self.kind == "localized":
            if not self.lambda0 > 0:
                raise ValueError(f"lambda0 must be > 0, got {self.lambda0!r}")
            if not self.B > 0:
                raise ValueError(f"B must be > 0, got {self.B!r}")
            if not self.C < self.D:
                raise ValueError(f"need C < D, got C={self.C!r}, D={self.D!r}")
            if not self.D - self.C < math.pi:
                raise ValueError(
                    f"D - C must be < pi for the localized damping hypothesis, got {self.D - self.C!r}"
                )
            if not self.smoothing_width > 0:
                raise ValueError("smoothing_width must be > 0 for a C1 localized profile")
            if self.smoothing_width > min(self.B, 0.5 * (self.D - self.C)):
                raise ValueError(
                    "smoothing_width too large: the ramps must fit inside omega "
                    f"(max {min(self.B, 0.5 * (self.D - self.C))!r})"
                )

    @property
    def is_constant(self) -> bool:
        return self.kind in ("none", "constant")

    @property
    def constant_value(self) -> float:
        if self.kind == "none":
            return 0.0
        if self.kind == "constant":
            return float(self.a0)
        raise ValueError("localized damping has no constant value")


@dataclass(frozen=True)
class ModelParams:
    alpha: float = 1.0
    gamma: int = 1
    p: int = 1
    damping: DampingProfile = field(default_factory=DampingProfile)

    def __post_init__(self):
        if self.gamma not in (1, -1):
            raise ValueError(f"gamma must be +1 or -1, got {self.gamma!r}")
        if int(self.p) != self.p or self.p < 1:
            raise ValueError(f"p must be a positive integer, got {self.p!r}")
        if not math.isfinite(self.alpha):
            raise ValueError(f"alpha must be finite, got {self.alpha!r}")
        object.__setattr__(self, "gamma", int(self.gamma))
        object.__setattr__(self, "p", int(self.p))


def cosine_ramp(s):
    """0 for s <= 0, 1 for s >= 1, (1 - cos(pi s))/2 in between (C1)."""
    s = np.clip(s, 0.0, 1.0)
    return 0.5 * (1.0 - np.cos(np.pi * s))


def _interval_indicator(z, lo, hi, width):
    depth = np.minimum(z - lo, hi - z)
    return cosine_ramp(depth / width)


def damping_field(profile: DampingProfile, grid: GridSpec) -> RealField:
    if profile.kind == "none":
        return RealField(grid, np.zeros(grid.shape))
    if profile.kind == "constant":
        return RealField(grid, np.full(grid.shape, float(profile.a0)))

    if not (profile.B < grid.Lx / 2 and -grid.Ly / 2 < profile.C and profile.D < grid.Ly / 2):
        raise ValueError(
            f"omega=(-{profile.B}, {profile.B}) x ({profile.C}, {profile.D}) "
            f"is not strictly inside the domain {grid.Lx} x {grid.Ly}"
        )
    w = profile.smoothing_width
    chi_x = _interval_indicator(grid.x, -profile.B, profile.B, w)
    chi_y = _interval_indicator(grid.y, profile.C, profile.D, w)
    a = profile.lambda0 * (1.0 - np.outer(chi_x, chi_y))
    return RealField(grid, a)


def gaussian_initial(amplitude: float, sigma: float, grid: GridSpec) -> RealField:
    """``amplitude * exp(-sigma (x^2 + y^2))`` sampled at the nodes."""
    if not sigma > 0:
        raise ValueError(f"sigma must be > 0, got {sigma!r}")
    x, y = grid.nodes()
    return RealField(grid, amplitude * np.exp(-sigma * (x**2 + y**2)))
