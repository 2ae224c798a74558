"""
Norm bounds for the canonical convolution
=========================================

The L1 bound has constant 1/sqrt(2 pi |b|). Sharper Lp bounds carry the
Beckner constants A_p, which sit below 1 for p in [1, 2].
"""

# %%
import numpy as np

from lctconv import LctParams, SampleGrid, SampledSignal
from lctconv.theorems import YoungExponents, verify_young, young_constant

for p in (1, 1.25, 4 / 3, 1.5, 2, 3):
    print(f"A_{p:.3g} = {young_constant(p):.10f}")

# %% random smooth pairs against several exponent triples
rng = np.random.default_rng(0)
grid = SampleGrid.centered(1 / 32, 512)
t = grid.points


def bump():
    c, w = rng.uniform(-2, 2), rng.uniform(0.3, 1)
    return SampledSignal(grid, np.exp(-(t - c) ** 2 / (2 * w * w) + 0.5j * rng.uniform(-1, 1) * t**2))


A = LctParams(2, 3, 1, 2)
for p, q in ((1, 1), (1, 2), (2, 2), (4 / 3, 4 / 3)):
    x = YoungExponents.from_pq(p, q)
    ratios = []
    for _ in range(20):
        rep = verify_young(bump(), bump(), x, A)
        ratios.append(rep.details["lhs"] / rep.details["rhs"])
    print(f"p={p:.3g} q={q:.3g} r={x.r:.3g}: worst lhs/bound = {max(ratios):.4f}")
