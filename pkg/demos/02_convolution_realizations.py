"""
One operator, three ways to compute it
======================================

The canonical convolution can be summed directly, or reduced to an ordinary
convolution with chirps on the inputs and output. Two such reductions exist;
all three agree to rounding.
"""

# %%
import numpy as np

from lctconv import LctParams, Realization, SampleGrid, SampledSignal, convolve_new, lct_forward
from lctconv.convolution import spectral_grids
from lctconv.theorems import phi_factor

grid = SampleGrid.centered(1 / 32, 512)
t = grid.points
f = SampledSignal(grid, np.exp(-t**2 / 2))
g = SampledSignal(grid, np.exp(-(t - 1) ** 2 / 0.98 + 0.15j * t**2))
A = LctParams(1, 2, 1, 3)

# %%
out = {how: convolve_new(f, g, A, how) for how in Realization}
ref = out[Realization.DIRECT].values
for how, h in out.items():
    print(f"{how.value:7s} start={h.grid.start:+.4f}  max|diff| = {np.abs(h.values - ref).max():.2e}")

# %% the output grid starts b to the left of the summed supports
print("grid start:", out[Realization.DIRECT].grid.start, "=", 2 * grid.start - A.b)

# %% product rule in the transform domain
h = out[Realization.CHIRP_ONE]
n, u0 = spectral_grids(f, g, A)
Ff, Fg, Fh = (lct_forward(s, A, count=n, u_start=u0) for s in (f, g, h))
rhs = phi_factor(Ff.u, A) * Ff.values * Fg.values
print("L(f conv g) vs Phi L f L g:", np.abs(Fh.values - rhs).max() / np.abs(rhs).max())
