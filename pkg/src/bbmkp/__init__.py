"""Pseudo-spectral solver for the damped 2D generalized BBM-KP equation.

    u_t + u_x + alpha u^p u_x - u_xxt + gamma d_x^{-1} u_yy + a(x, y) u = 0

on a doubly periodic rectangle.
"""

from .diagnostics import DecayFit, TimeSeries, decay_fit, energy, l2_norm
from .errors import (
    AdmissibilityError,
    BlowUpError,
    CommensurabilityError,
    ConfigError,
    GridMismatchError,
    HermitianError,
)
from .exact import build_traveling_wave, linear_exact_evolve, traveling_wave_field, wave_grid
from .model import DampingProfile, ModelParams, damping_field, gaussian_initial
from .spectral import (
    GridSpec,
    RealField,
    SpectralField,
    dealiased_product,
    derivative_x,
    forward_transform,
    inverse_transform,
    wavenumbers,
)
from .special import elliptic_K, jacobi_sn, real_cubic_roots
from .stepper import Stepper, build_symbols, nonlinear_rhs, run, step_bootstrap, step_two

__version__ = "0.1.0"

__all__ = [
    "AdmissibilityError", "BlowUpError", "CommensurabilityError", "ConfigError", "DampingProfile",
    "DecayFit", "GridMismatchError", "GridSpec", "HermitianError", "ModelParams", "RealField",
    "SpectralField", "Stepper", "TimeSeries", "build_symbols", "build_traveling_wave", "damping_field",
    "dealiased_product", "decay_fit", "derivative_x", "elliptic_K", "energy", "forward_transform",
    "gaussian_initial", "inverse_transform", "jacobi_sn", "l2_norm", "linear_exact_evolve",
    "nonlinear_rhs", "real_cubic_roots", "run", "step_bootstrap", "step_two", "traveling_wave_field",
    "wave_grid", "wavenumbers",
]
