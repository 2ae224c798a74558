"""
Forward and inverse LCT on a sampled grid
=========================================

The fast path is chirp, FFT, chirp. Its output grid has spacing
2 pi |b| / (N dt), so the u-axis widens as |b| grows.
"""

# %%
import math

import numpy as np

from lctconv import FOURIER, LctParams, SampleGrid, SampledSignal, lct_forward, lct_inverse, lct_oracle

grid = SampleGrid.centered(1 / 32, 512)
f = SampledSignal(grid, np.exp(-grid.points**2 / 2))

# %% a = 0 is the unitary Fourier transform times a constant phase
F = lct_forward(f, FOURIER)
closed = np.exp(-1j * np.pi / 4) * np.exp(-F.u**2 / 2)
print("Fourier case, max error vs closed form:", np.abs(F.values - closed).max())

# %% a fractional Fourier angle and a shear
for A in (LctParams.fractional(math.pi / 3), LctParams(1, 2, 1, 3)):
    F = lct_forward(f, A)
    ref = lct_oracle(f, A, F.grid)
    back = lct_inverse(F, grid)
    print(A.as_tuple())
    print("  du =", F.grid.step)
    print("  fast vs quadrature:", np.abs(F.values - ref.values).max())
    print("  round trip:", np.linalg.norm(back.values - f.values) / np.linalg.norm(f.values))
