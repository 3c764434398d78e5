"""
Why products are padded
=======================

A pointwise product on the grid folds high wavenumbers back onto low
ones.  Padding to 3/2 the size before multiplying and truncating after
gives exactly the truncated convolution of the two spectra.
"""

import numpy as np

from bbmkp import GridSpec, RealField, dealiased_product, forward_transform, inverse_transform
from bbmkp.spectral import truncated_convolution

grid = GridSpec(2 * np.pi, 2 * np.pi, 16, 16)
x, y = grid.nodes()

# cos(6x)^2 = 1/2 + cos(12x)/2, and 12 aliases to -4 on a 16-point grid.
F = forward_transform(RealField(grid, np.cos(6 * x)))
naive = forward_transform(RealField(grid, inverse_transform(F).values ** 2))
padded = dealiased_product(F, F)
print(f"naive product,  mode (4, 0): {abs(naive.mode(4, 0)):.3f}")
print(f"padded product, mode (4, 0): {abs(padded.mode(4, 0)):.3f}")

rng = np.random.default_rng(0)
f = forward_transform(RealField(grid, rng.standard_normal(grid.shape)))
g = forward_transform(RealField(grid, rng.standard_normal(grid.shape)))
keep = (grid.mode_x[:, None] != -8) & (grid.mode_y[None, :] != -8)
f = type(f)(grid, np.where(keep, f.coeffs, 0))
g = type(g)(grid, np.where(keep, g.coeffs, 0))
dev = np.max(np.abs(dealiased_product(f, g).coeffs - truncated_convolution(f, g).coeffs))
print(f"padded product vs direct convolution sum: {dev:.1e}")
