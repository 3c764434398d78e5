"""Periodic grid, Fourier transforms and dealiased products.

Coefficients follow the normalized convention

    u_hat(m, n) = 1/(Nx Ny) * sum_ij u(x_i, y_j) exp(-2 pi i (m x_i / Lx + n y_j / Ly))

with nodes ``x_i = -Lx/2 + i Lx/Nx``, so ``u_hat(0, 0)`` is the grid mean and the
inverse is the plain truncated Fourier series.  Coefficient arrays are stored in
transform order along both axes: array index ``k`` holds mode ``k`` for
``k < N/2`` and mode ``k - N`` otherwise.  Use :meth:`SpectralField.mode` to
address a coefficient by its signed mode pair.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property

import numpy as np
import scipy.fft as sfft

from .errors import GridMismatchError, HermitianError

__all__ = [
    "GridSpec",
    "RealField",
    "SpectralField",
    "padded_size",
    "wavenumbers",
    "forward_transform",
    "inverse_transform",
    "derivative_x",
    "dealiased_product",
    "brute_force_dft",
    "truncated_convolution",
]


def padded_size(n: int) -> int:
    """Size of the 3/2-rule padded grid: ceil(3n/2), bumped to the next even."""
    p = -(-3 * n // 2)
    return p + (p % 2)


@dataclass(frozen=True)
class GridSpec:
    """Equidistant periodic grid on ``[-Lx/2, Lx/2) x [-Ly/2, Ly/2)``."""

    Lx: float
    Ly: float
    Nx: int
    Ny: int

    def __post_init__(self):
        for name in ("Nx", "Ny"):
            n = getattr(self, name)
            if int(n) != n or n < 4 or n % 2:
                raise ValueError(f"{name} must be an even integer >= 4, got {n!r}")
            object.__setattr__(self, name, int(n))
        for name in ("Lx", "Ly"):
            length = float(getattr(self, name))
            if not np.isfinite(length) or length <= 0:
                raise ValueError(f"{name} must be positive, got {length!r}")
            object.__setattr__(self, name, length)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.Nx, self.Ny)

    @property
    def padded_shape(self) -> tuple[int, int]:
        return (padded_size(self.Nx), padded_size(self.Ny))

    @property
    def dx(self) -> float:
        return self.Lx / self.Nx

    @property
    def dy(self) -> float:
        return self.Ly / self.Ny

    @property
    def area(self) -> float:
        return self.Lx * self.Ly

    @cached_property
    def x(self) -> np.ndarray:
        return -self.Lx / 2 + self.dx * np.arange(self.Nx)

    @cached_property
    def y(self) -> np.ndarray:
        return -self.Ly / 2 + self.dy * np.arange(self.Ny)

    def nodes(self) -> tuple[np.ndarray, np.ndarray]:
        """Node coordinates as two ``(Nx, Ny)`` arrays (``ij`` indexing)."""
        return np.meshgrid(self.x, self.y, indexing="ij")

    @cached_property
    def mode_x(self) -> np.ndarray:
        """Signed integer x-mode of each array index, in transform order."""
        return np.fft.fftfreq(self.Nx, 1.0 / self.Nx).astype(int)

    @cached_property
    def mode_y(self) -> np.ndarray:
        return np.fft.fftfreq(self.Ny, 1.0 / self.Ny).astype(int)

    @cached_property
    def xi(self) -> np.ndarray:
        return 2 * np.pi * self.mode_x / self.Lx

    @cached_property
    def eta(self) -> np.ndarray:
        return 2 * np.pi * self.mode_y / self.Ly

    def index(self, m: int, n: int) -> tuple[int, int]:
        """Array index of the signed mode ``(m, n)``."""
        if not (-self.Nx // 2 <= m < self.Nx // 2 and -self.Ny // 2 <= n < self.Ny // 2):
            raise IndexError(f"mode ({m}, {n}) outside the grid's mode range")
        return (m % self.Nx, n % self.Ny)


def _check_same_grid(*grids: GridSpec) -> None:
    first = grids[0]
    for g in grids[1:]:
        if g != first:
            raise GridMismatchError(f"grid mismatch: {first} vs {g}")


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True, eq=False)
class RealField:
    """Real samples of a field at the grid nodes."""

    grid: GridSpec
    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=float)
        if v.shape != self.grid.shape:
            raise ValueError(f"values shape {v.shape} does not match grid {self.grid.shape}")
        if not np.all(np.isfinite(v)):
            raise ValueError("field contains non-finite values")
        object.__setattr__(self, "values", _frozen(v))


@dataclass(frozen=True, eq=False)
class SpectralField:
    """Fourier coefficients of a field, stored in transform order."""

    grid: GridSpec
    coeffs: np.ndarray

    def __post_init__(self):
        c = np.asarray(self.coeffs, dtype=complex)
        if c.shape != self.grid.shape:
            raise ValueError(f"coeffs shape {c.shape} does not match grid {self.grid.shape}")
        object.__setattr__(self, "coeffs", _frozen(c))

    def mode(self, m: int, n: int) -> complex:
        return complex(self.coeffs[self.grid.index(m, n)])

    def hermitian_defect(self) -> float:
        """max |c(m,n) - conj(c(-m,-n))| over all stored modes."""
        return float(np.max(np.abs(self.coeffs - np.conj(_reflect(self.coeffs)))))


def _reflect(c: np.ndarray) -> np.ndarray:
    """Array whose (m, n) entry is c(-m, -n), in transform order."""
    return np.roll(c[::-1, ::-1], 1, axis=(0, 1))


def _centering_sign(shape: tuple[int, int]) -> np.ndarray:
    """(-1)^(m+n): relates node-origin transform coefficients to centered ones."""
    i = np.arange(shape[0])[:, None]
    j = np.arange(shape[1])[None, :]
    return np.where((i + j) % 2 == 0, 1.0, -1.0)


def wavenumbers(grid: GridSpec) -> tuple[np.ndarray, np.ndarray]:
    """Return the 1-D arrays ``xi_m = 2 pi m / Lx`` and ``eta_n = 2 pi n / Ly``."""
    return grid.xi.copy(), grid.eta.copy()


def forward_transform(f: RealField) -> SpectralField:
    c = sfft.fft2(f.values, norm="forward") * _centering_sign(f.grid.shape)
    return SpectralField(f.grid, c)


def inverse_transform(F: SpectralField, *, tol: float = 1e-10) -> RealField:
    """Evaluate the truncated series at the nodes.

    Raises :class:`HermitianError` when the coefficients are not conjugate
    symmetric to within ``tol`` relative to their largest magnitude, since the
    result would then have a non-negligible imaginary part.
    """
    c = F.coeffs
    scale = max(1.0, float(np.max(np.abs(c)))) if c.size else 1.0
    defect = F.hermitian_defect()
    if defect > tol * scale:
        raise HermitianError(f"spectrum is not Hermitian (defect {defect:.3g})")
    u = sfft.ifft2(c * _centering_sign(F.grid.shape), norm="forward")
    return RealField(F.grid, u.real)


def derivative_x(F: SpectralField) -> SpectralField:
    """Spectral x-derivative; the x-Nyquist row is zeroed."""
    grid = F.grid
    symbol = 1j * grid.xi.astype(complex)
    symbol[grid.Nx // 2] = 0.0
    return SpectralField(grid, F.coeffs * symbol[:, None])


def _pad_axis(c: np.ndarray, p: int, axis: int) -> np.ndarray:
    n = c.shape[axis]
    h = n // 2
    c = np.moveaxis(c, axis, 0)
    out = np.zeros((p,) + c.shape[1:], dtype=complex)
    out[:h] = c[:h]
    out[p - h + 1 :] = c[h + 1 :]
    # split the Nyquist coefficient between +n/2 and -n/2 so the padded
    # interpolant of a real field stays real
    out[h] = 0.5 * c[h]
    out[p - h] = 0.5 * c[h]
    return np.moveaxis(out, 0, axis)


def _truncate_axis(c: np.ndarray, n: int, axis: int) -> np.ndarray:
    p = c.shape[axis]
    h = n // 2
    c = np.moveaxis(c, axis, 0)
    out = np.empty((n,) + c.shape[1:], dtype=complex)
    out[:h] = c[:h]
    out[h + 1 :] = c[p - h + 1 :]
    # +n/2 and -n/2 are indistinguishable on the coarse grid
    out[h] = c[h] + c[p - h]
    return np.moveaxis(out, 0, axis)


def _pad(c: np.ndarray, shape: tuple[int, int]) -> np.ndarray:
    return _pad_axis(_pad_axis(c, shape[0], 0), shape[1], 1)


def _truncate(c: np.ndarray, shape: tuple[int, int]) -> np.ndarray:
    return _truncate_axis(_truncate_axis(c, shape[0], 0), shape[1], 1)


def dealiased_product(f: SpectralField, g: SpectralField) -> SpectralField:
    """Spectrum of ``f*g`` computed on the 3/2-padded grid and truncated back."""
    _check_same_grid(f.grid, g.grid)
    grid = f.grid
    sign = _centering_sign(grid.shape)
    pshape = grid.padded_shape
    fp = sfft.ifft2(_pad(f.coeffs * sign, pshape), norm="forward")
    gp = sfft.ifft2(_pad(g.coeffs * sign, pshape), norm="forward")
    h = sfft.fft2(fp * gp, norm="forward")
    return SpectralField(grid, _truncate(h, grid.shape) * sign)


def brute_force_dft(f: RealField) -> SpectralField:
    """Literal quadrature sum for the coefficients; a test oracle for small grids."""
    grid = f.grid
    ex = np.exp(-2j * np.pi * np.outer(grid.mode_x, grid.x) / grid.Lx)
    ey = np.exp(-2j * np.pi * np.outer(grid.mode_y, grid.y) / grid.Ly)
    c = np.zeros(grid.shape, dtype=complex)
    for a in range(grid.Nx):
        for b in range(grid.Ny):
            c[a, b] = np.sum(f.values * np.outer(ex[a], ey[b]))
    return SpectralField(grid, c / (grid.Nx * grid.Ny))


def truncated_convolution(f: SpectralField, g: SpectralField) -> SpectralField:
    """Mode-by-mode convolution sum projected onto the grid's modes (oracle).

    The product's modes outside ``[-N/2, N/2]`` are discarded; the two modes
    ``+N/2`` and ``-N/2`` are identified, as they are on the sampled grid.
    Exact for inputs without Nyquist content.
    """
    _check_same_grid(f.grid, g.grid)
    grid = f.grid
    nx, ny = grid.Nx, grid.Ny
    out = np.zeros(grid.shape, dtype=complex)
    mx, my = grid.mode_x, grid.mode_y
    for a in range(nx):
        for b in range(ny):
            fa = f.coeffs[a, b]
            if fa == 0:
                continue
            for c_ in range(nx):
                kx = mx[a] + mx[c_]
                if abs(kx) > nx // 2:
                    continue
                row = fa * g.coeffs[c_]
                ky = my[b] + my
                keep = np.abs(ky) <= ny // 2
                np.add.at(out, (kx % nx, ky[keep] % ny), row[keep])
    return SpectralField(grid, out)


# --- half-spectrum helpers used by the time stepper ------------------------
#
# Inside the stepper coefficients are kept in real-to-complex layout
# (Nx, Ny//2 + 1) with the node-origin sign convention; all operators there are
# translation invariant, so the centering sign is applied only at the
# public boundary.


def half_from_centered(c: np.ndarray) -> np.ndarray:
    ny = c.shape[1]
    return (c * _centering_sign(c.shape))[:, : ny // 2 + 1].copy()


def centered_from_half(ch: np.ndarray, shape: tuple[int, int]) -> np.ndarray:
    nx, ny = shape
    full = np.empty(shape, dtype=complex)
    full[:, : ny // 2 + 1] = ch
    # negative n from conjugate symmetry: c(m, -n) = conj(c(-m, n))
    pos = ch[:, 1 : ny // 2][::-1, ::-1]
    full[:, ny // 2 + 1 :] = np.conj(np.roll(pos, 1, axis=0))
    return full * _centering_sign(shape)


class PaddedTransforms:
    """Real-to-complex transforms between a half spectrum and the padded grid.

    Inputs are assumed to carry no Nyquist content and outputs have their
    Nyquist row and column zeroed.
    """

    def __init__(self, grid: GridSpec):
        self.grid = grid
        self.shape = grid.shape
        self.pshape = grid.padded_shape
        self._hx = grid.Nx // 2
        self._hy = grid.Ny // 2

    def to_padded(self, ch: np.ndarray) -> np.ndarray:
        px, py = self.pshape
        hx, hy = self._hx, self._hy
        buf = np.zeros((px, py // 2 + 1), dtype=complex)
        buf[:hx, :hy] = ch[:hx, :hy]
        buf[px - hx + 1 :, :hy] = ch[hx + 1 :, :hy]
        return sfft.irfft2(buf, s=self.pshape, norm="forward")

    def from_padded(self, q: np.ndarray) -> np.ndarray:
        px, _ = self.pshape
        hx, hy = self._hx, self._hy
        h = sfft.rfft2(q, norm="forward")
        out = np.zeros((self.shape[0], hy + 1), dtype=complex)
        out[:hx, :hy] = h[:hx, :hy]
        out[hx + 1 :, :hy] = h[px - hx + 1 :, :hy]
        return out

    def to_grid(self, ch: np.ndarray) -> np.ndarray:
        return sfft.irfft2(ch, s=self.shape, norm="forward")

    def from_grid(self, u: np.ndarray) -> np.ndarray:
        return sfft.rfft2(u, norm="forward")
