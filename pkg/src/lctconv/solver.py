"""Solve ``lam * phi + g (x)_A phi = f`` by division in the LCT domain.

Taking ``L_A`` of both sides turns the equation into
``Lambda(u) L_A phi(u) = L_A f(u)`` with symbol ``Lambda = lam + Phi L_A g``,
so ``phi = L_{A^-1}(L_A f / Lambda)`` whenever ``Lambda`` stays away from 0.
The discrete solve works on ``f``'s grid and the u-grid it induces.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .convolution import convolve_new
from .core import (
    LctParams,
    SampledSignal,
    SampleGrid,
    Spectrum,
    dual_step,
    lct_forward,
    lct_inverse,
    lct_oracle,
    resample,
    union_grid,
)
from .errors import DegenerateCase, IncompatibleGrids, NonInvertibleSymbol, ResidualTooLarge
from .theorems import norm_p, phi_factor

SYMBOL_RTOL = 1e-8


@dataclass(frozen=True)
class EquationProblem:
    lam: complex
    f: SampledSignal
    g: SampledSignal
    params: LctParams

    def __post_init__(self):
        object.__setattr__(self, "lam", complex(self.lam))
        if not self.f.grid.same_step(self.g.grid):
            raise IncompatibleGrids("f and g must be sampled with the same step")


@dataclass
class SolverDiagnostics:
    """``residual_rel_l2`` is None when no solution was computed."""

    min_abs_symbol: float
    max_inverse_symbol: float
    threshold: float
    regularized: bool = False
    residual_rel_l2: float | None = None

    @property
    def invertible(self) -> bool:
        return self.min_abs_symbol >= self.threshold

    def to_dict(self) -> dict:
        return {
            "min_abs_symbol": self.min_abs_symbol,
            "regularized": self.regularized,
            "residual_rel_l2": self.residual_rel_l2,
        }


def default_u_grid(prob: EquationProblem) -> SampleGrid:
    """The u-grid :func:`lct_forward` induces on ``f``'s grid."""
    grid = prob.f.grid
    du = dual_step(grid.step, grid.count, prob.params.b)
    return SampleGrid(grid.start / grid.step * du, du, grid.count)


def _lct_on(g: SampledSignal, A: LctParams, u_grid: SampleGrid) -> Spectrum:
    # FFT path when the u-grid pairs with g's step, quadrature otherwise
    du = dual_step(g.grid.step, u_grid.count, A.b)
    if abs(u_grid.step - du) <= 1e-9 * du:
        return lct_forward(g, A, count=u_grid.count, u_start=u_grid.start)
    return lct_oracle(g, A, u_grid)


def lambda_symbol(u_grid: SampleGrid, prob: EquationProblem) -> Spectrum:
    """``lam + L_A g(u) Phi(u)`` at every point of ``u_grid``."""
    G = _lct_on(prob.g, prob.params, u_grid)
    return G.with_values(prob.lam + G.values * phi_factor(G.u, prob.params))


def _diagnose(symbol: Spectrum, lam: complex) -> SolverDiagnostics:
    mag = np.abs(symbol.values)
    kernel = np.abs(symbol.values - lam).max()
    threshold = SYMBOL_RTOL * (abs(lam) + kernel)
    lo = float(mag.min())
    return SolverDiagnostics(
        min_abs_symbol=lo,
        max_inverse_symbol=math.inf if lo == 0 else 1 / lo,
        threshold=float(threshold),
    )


def check_solvability(prob: EquationProblem, u_grid: SampleGrid | None = None) -> SolverDiagnostics:
    """min |Lambda| and sup |1/Lambda| on ``u_grid``, without solving."""
    u_grid = u_grid or default_u_grid(prob)
    return _diagnose(lambda_symbol(u_grid, prob), prob.lam)


def residual(prob: EquationProblem, phi: SampledSignal) -> float:
    """``||lam phi + g (x)_A phi - f||_2 / ||f||_2`` on a grid holding every term.

    Computed with :func:`convolve_new` directly, not through the spectral path.
    """
    conv = convolve_new(prob.g, phi, prob.params)
    grid = union_grid(union_grid(prob.f.grid, phi.grid), conv.grid)
    r = (prob.lam * resample(phi, grid) + resample(conv, grid)) - resample(prob.f, grid)
    ref = norm_p(prob.f, 2)
    err = norm_p(r, 2)
    return err / ref if ref > 0 else err


def solve(prob: EquationProblem, tol: float = 1e-6):
    """Return ``(phi, diagnostics)`` with ``phi`` on ``f``'s grid.

    Raises NonInvertibleSymbol (DegenerateCase when ``lam == 0``) if
    ``min |Lambda| < 1e-8 (|lam| + max |L_A g Phi|)``, and ResidualTooLarge if
    the result misses the equation by more than ``tol``.
    """
    A = prob.params
    F = lct_forward(prob.f, A)
    symbol = lambda_symbol(F.grid, prob)
    diag = _diagnose(symbol, prob.lam)
    if not diag.invertible:
        cls = DegenerateCase if prob.lam == 0 else NonInvertibleSymbol
        raise cls(
            f"symbol min |Lambda| = {diag.min_abs_symbol:.3g} below {diag.threshold:.3g}",
            diag,
        )
    phi = lct_inverse(F.with_values(F.values / symbol.values), prob.f.grid)
    diag.residual_rel_l2 = residual(prob, phi)
    if not diag.residual_rel_l2 <= tol:
        raise ResidualTooLarge(
            f"relative residual {diag.residual_rel_l2:.3g} exceeds {tol:g}", diag
        )
    return phi, diag
