"""Closed-form solutions: damped linear evolution and the cnoidal traveling wave."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import AdmissibilityError, CommensurabilityError
from .model import DampingProfile
from .special import elliptic_K, jacobi_sn, real_cubic_roots
from .spectral import GridSpec, RealField, SpectralField
from .stepper import mode_mask

__all__ = [
    "TravelingWaveSpec",
    "build_traveling_wave",
    "wave_grid",
    "traveling_wave_field",
    "linear_exact_evolve",
]

_ROOT_RESIDUAL = 1e-9
_PERIOD_TOL = 1e-9


@dataclass(frozen=True)
class TravelingWaveSpec:
    """Periodic wave ``u = r3 - (r3 - r2) sn^2(phase_scale (x + r y - c t); m)``."""

    alpha: float
    alpha_tilde: float
    gamma: int
    c: float
    r: float
    h: float
    h1: float
    r1: float
    r2: float
    r3: float
    m: float
    phase_scale: float
    wavelength: float
    convention: str = "parameter"

    def polynomial(self, phi):
        """The cubic whose zeros are r1 < r2 < r3; equals (du/dphase)^2 on the wave."""
        s = 1.0 + self.gamma * self.r**2 - self.c
        return (2 * self.alpha_tilde / (3 * self.c)) * phi**3 - (s / self.c) * phi**2 + 2 * self.h


def build_traveling_wave(alpha, gamma, c, r, h, convention="parameter") -> TravelingWaveSpec:
    if gamma not in (1, -1):
        raise AdmissibilityError(f"gamma must be +1 or -1, got {gamma!r}")
    if c == 0:
        raise AdmissibilityError("wave speed c must be nonzero")
    if alpha == 0:
        raise AdmissibilityError("alpha must be nonzero")
    at = -0.5 * alpha
    s = 1.0 + gamma * r**2 - c
    if not c / at < 0:
        raise AdmissibilityError(f"need c/alpha_tilde < 0, got {c / at!r}")
    if not s / c < 0:
        raise AdmissibilityError(f"need (1 + gamma r^2 - c)/c < 0, got {s / c!r}")
    h1 = s**3 / (6 * at**2 * c)
    if not h1 < h < 0:
        raise AdmissibilityError(f"h must satisfy h1 < h < 0 with h1={h1!r}, got h={h!r}")

    c3, c2, c0 = 2 * at / (3 * c), -s / c, 2 * h
    roots = real_cubic_roots(c3, c2, 0.0, c0)
    if len(roots) != 3 or not roots[0] < roots[1] < roots[2]:
        raise AdmissibilityError(f"cubic does not have three distinct real roots: {roots}")
    r1, r2, r3 = roots
    for root in roots:
        resid = abs(((c3 * root + c2) * root) * root + c0)
        if resid > _ROOT_RESIDUAL * max(1.0, abs(c3) * abs(root) ** 3):
            raise AdmissibilityError(f"root {root!r} has residual {resid:.3g}")

    m = (r3 - r2) / (r3 - r1)
    radicand = -at * (r3 - r1) / (6 * c)
    if not radicand > 0:
        raise AdmissibilityError(f"phase-scale radicand must be positive, got {radicand!r}")
    kappa = math.sqrt(radicand)
    wavelength = 2 * elliptic_K(m, convention) / kappa
    return TravelingWaveSpec(
        alpha=float(alpha), alpha_tilde=at, gamma=int(gamma), c=float(c), r=float(r),
        h=float(h), h1=h1, r1=r1, r2=r2, r3=r3, m=m, phase_scale=kappa,
        wavelength=wavelength, convention=convention,
    )


def wave_grid(wave: TravelingWaveSpec, N: int = 512, periods: int = 1) -> GridSpec:
    """Smallest doubly periodic cell for the wave: ``Lx`` a whole number of
    wavelengths and ``r * Ly`` exactly one wavelength."""
    lx = periods * wave.wavelength
    ly = wave.wavelength / abs(wave.r) if wave.r != 0 else lx
    return GridSpec(lx, ly, N, N)


def _check_commensurate(wave: TravelingWaveSpec, grid: GridSpec) -> None:
    for name, ratio in (("Lx", grid.Lx / wave.wavelength), ("r*Ly", wave.r * grid.Ly / wave.wavelength)):
        if abs(ratio - round(ratio)) > _PERIOD_TOL or (name == "Lx" and round(ratio) == 0):
            raise CommensurabilityError(
                f"{name} = {ratio:.12g} wavelengths; the grid must hold a whole number of periods"
            )


def traveling_wave_field(wave: TravelingWaveSpec, grid: GridSpec, t: float) -> RealField:
    _check_commensurate(wave, grid)
    x, y = grid.nodes()
    phase = wave.phase_scale * (x + wave.r * y - wave.c * t)
    sn = jacobi_sn(phase, wave.m, wave.convention)
    return RealField(grid, wave.r3 - (wave.r3 - wave.r2) * sn**2)


def linear_exact_evolve(u0_hat: SpectralField, t: float, a, gamma: int) -> SpectralField:
    """Exact solution of the damped linear equation with constant damping ``a``.

    Modes ``m != 0`` get ``exp(-i t (xi^2 + gamma eta^2 - i a xi) / (xi (1 + xi^2)))``;
    the mean decays as ``exp(-a t)`` and every other mode removed by the
    zero-mode policy stays zero.
    """
    if isinstance(a, DampingProfile):
        if not a.is_constant:
            raise ValueError("the closed-form linear solution needs spatially constant damping")
        a = a.constant_value
    a = float(a)
    grid = u0_hat.grid
    xi = grid.xi[:, None]
    eta = grid.eta[None, :]
    mask = mode_mask(grid)
    with np.errstate(divide="ignore", invalid="ignore"):
        expo = -1j * t * (xi**2 + gamma * eta**2 - 1j * a * xi) / (xi * (1 + xi**2))
    expo[0, :] = 0.0
    expo[0, 0] = -a * t
    factor = np.where(mask, np.exp(np.where(mask, expo, 0.0)), 0.0)
    return SpectralField(grid, u0_hat.coeffs * factor)
