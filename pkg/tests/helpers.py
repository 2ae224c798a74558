"""Shared test data: the matrix test set, standard signal pairs, random signals."""

import math

import numpy as np

from lctconv import LctParams, SampledSignal, SampleGrid

STEP = 1 / 32
GRID = SampleGrid.centered(STEP, 512)  # [-8, 8)

TEST_MATRICES = [
    LctParams(0, 1, -1, 0),
    LctParams(1, 1, 0, 1),
    LctParams(1, 2, 1, 3),
    LctParams.fractional(math.pi / 6),
    LctParams.fractional(math.pi / 4),
    LctParams.fractional(math.pi / 3),
    LctParams(1, -1, 2, -1),
    LctParams(2, 3, 1, 2),
]
MATRIX_IDS = ["fourier", "1-1-0-1", "1-2-1-3", "frft30", "frft45", "frft60", "b-neg", "2-3-1-2"]


def gaussian(grid=GRID, center=0.0, width=1.0, rate=0.0, amplitude=1.0):
    t = grid.points
    v = amplitude * np.exp(-((t - center) ** 2) / (2 * width**2)) * np.exp(0.5j * rate * t**2)
    return SampledSignal(grid, v)


def smooth_rect(grid=GRID, left=-1.0, right=1.0, edge=0.3):
    from scipy.special import erf

    t = grid.points
    s = edge * math.sqrt(2)
    return SampledSignal(grid, 0.5 * (erf((t - left) / s) - erf((t - right) / s)))


def signal_pairs():
    """Gaussians, chirped Gaussians and smoothed rects."""
    return [
        ("gauss-gauss", gaussian(), gaussian(center=1.0, width=0.7)),
        ("chirp-gauss", gaussian(width=1.2, rate=0.8), gaussian(center=-0.5, width=0.6)),
        ("chirp-chirp", gaussian(center=0.5, rate=-0.6), gaussian(center=-1, width=0.8, rate=1.1)),
        ("rect-gauss", smooth_rect(left=-2, right=1), gaussian(center=0.3, width=0.9)),
        ("rect-rect", smooth_rect(left=-1.5, right=0.5, edge=0.4), smooth_rect(left=0, right=2)),
    ]


PAIR_IDS = [name for name, _, _ in signal_pairs()]


def random_smooth(rng, grid=GRID):
    """One to three chirped Gaussian bumps with random complex amplitudes."""
    t = grid.points
    v = np.zeros(t.size, dtype=complex)
    for _ in range(rng.integers(1, 4)):
        amp = rng.normal() + 1j * rng.normal()
        c = rng.uniform(-2, 2)
        w = rng.uniform(0.3, 1.0)
        rate = rng.uniform(-0.5, 0.5)
        v += amp * np.exp(-((t - c) ** 2) / (2 * w**2) + 0.5j * rate * t**2)
    return SampledSignal(grid, v)


def rel_l2(x, y):
    return float(np.linalg.norm(x - y) / np.linalg.norm(y))


def aligned_kernel_grid(A, step=STEP, half_width=4.0, count=256):
    """Grid for g whose start is b plus a whole number of steps, so that
    g (x)_A phi lands on phi's lattice."""
    k = round((-half_width - A.b) / step)
    return SampleGrid(A.b + k * step, step, count)


def manufactured_problem(rng, A, lam, rho):
    """phi0, g Gaussians; f = lam phi0 + g (x)_A phi0; max |L_A g| = rho |lam|
    on f's u-grid (or rho itself when lam == 0)."""
    from lctconv import EquationProblem, convolve_new, lct_forward, resample
    from lctconv.core import union_grid
    from lctconv.solver import default_u_grid

    phi_grid = SampleGrid.centered(STEP, 384)
    phi0 = gaussian(phi_grid, center=rng.uniform(-1.5, 1.5), width=rng.uniform(0.4, 1.0),
                    rate=rng.uniform(-0.5, 0.5), amplitude=rng.normal() + 1j * rng.normal())
    g = gaussian(aligned_kernel_grid(A), center=rng.uniform(-1, 1), width=rng.uniform(0.3, 0.8),
                 rate=rng.uniform(-0.5, 0.5))
    grid = union_grid(phi_grid, convolve_new(g, phi0, A).grid)
    probe = EquationProblem(lam, SampledSignal(grid, np.zeros(grid.count)), g, A)
    ug = default_u_grid(probe)
    peak = np.abs(lct_forward(g, A, count=ug.count, u_start=ug.start).values).max()
    g = g * (rho * (abs(lam) if lam != 0 else 1.0) / peak)
    f = lam * resample(phi0, grid) + resample(convolve_new(g, phi0, A), grid)
    return EquationProblem(lam, f, g, A), resample(phi0, grid)
