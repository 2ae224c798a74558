"""
Solving lam phi + g conv phi = f
================================

Divide by the symbol lam + L g Phi in the transform domain, then invert.
A manufactured problem gives exact ground truth.
"""

# %%
import numpy as np

from lctconv import EquationProblem, LctParams, SampleGrid, SampledSignal, check_solvability, convolve_new, lambda_symbol, resample, solve
from lctconv.core import union_grid
from lctconv.errors import NonInvertibleSymbol
from lctconv.solver import default_u_grid

A = LctParams(1, 1, 0, 1)
step = 1 / 32
phi_grid = SampleGrid.centered(step, 384)
phi0 = SampledSignal(phi_grid, np.exp(-(phi_grid.points - 0.4) ** 2 / 0.7 + 0.2j * phi_grid.points**2))

# g sits on a grid offset by b so the output lands on phi's lattice
g_grid = SampleGrid(A.b - 4, step, 256)
g = SampledSignal(g_grid, 0.3 * np.exp(-g_grid.points**2 / 0.5))

# %%
lam = 1.0
h = convolve_new(g, phi0, A)
grid = union_grid(phi_grid, h.grid)
f = lam * resample(phi0, grid) + resample(h, grid)
phi, diag = solve(EquationProblem(lam, f, g, A))
err = np.linalg.norm(phi.values - resample(phi0, grid).values) / np.linalg.norm(phi0.values)
print("relative error:", err)
print(diag.to_dict())

# %% choose lam so that the symbol vanishes somewhere
ug = default_u_grid(EquationProblem(1, f, g, A))
at_zero = lambda_symbol(ug, EquationProblem(0, f, g, A)).values[ug.count // 2]  # u = 0
bad = EquationProblem(-at_zero, f, g, A)
print("min |symbol|:", check_solvability(bad).min_abs_symbol)
for prob in (bad, EquationProblem(0, f, g, A)):
    try:
        solve(prob)
    except NonInvertibleSymbol as exc:
        print(f"lam = {complex(prob.lam):.3f} rejected:", exc)
