import math

import numpy as np
import pytest
from scipy import integrate

from lctconv import (
    FOURIER,
    LctParams,
    Realization,
    SampledSignal,
    SampleGrid,
    convolve_deng,
    convolve_new,
    convolve_new_dual,
    convolve_shi,
    convolve_spectral,
    lct_forward,
)
from lctconv.errors import GridTooCoarse, IncompatibleGrids
from lctconv.theorems import (
    phi_factor,
    sup_relative_error,
    verify_convolution_theorem,
    verify_deng,
    verify_shi,
    verify_spectral,
)

from helpers import GRID, MATRIX_IDS, TEST_MATRICES, gaussian, random_smooth

A123 = LctParams(1, 2, 1, 3)
ZERO = SampledSignal(GRID, np.zeros(GRID.count))


def quad_complex(fn, lo, hi):
    re = integrate.quad(lambda x: fn(x).real, lo, hi, limit=400, epsabs=1e-13)[0]
    im = integrate.quad(lambda x: fn(x).imag, lo, hi, limit=400, epsabs=1e-13)[0]
    return re + 1j * im


def gauss_fn(center, width):
    return lambda x: math.exp(-((x - center) ** 2) / (2 * width**2))


# --- the new operator ---------------------------------------------------------

@pytest.mark.parametrize("how", list(Realization))
def test_zero_kernel_gives_zero(how):
    assert not np.any(convolve_new(gaussian(), ZERO, A123, how).values)


def test_output_grid_is_shifted_support():
    f = gaussian()
    g = gaussian(SampleGrid(-3.0, GRID.step, 100))
    h = convolve_new(f, g, A123)
    assert h.grid.start == pytest.approx(GRID.start - 3.0 - A123.b)
    assert h.grid.count == GRID.count + 100 - 1
    hd = convolve_new_dual(f, g, A123)
    assert hd.grid.start == pytest.approx(GRID.start - 3.0 + A123.b)


def test_commutativity_two_gaussians():
    f, g = gaussian(), gaussian(center=1, width=0.6)
    x = convolve_new(f, g, A123).values
    y = convolve_new(g, f, A123).values
    assert sup_relative_error(x, y) <= 1e-8


@pytest.mark.parametrize("A", TEST_MATRICES, ids=MATRIX_IDS)
def test_realizations_agree(A, rng):
    f, g = random_smooth(rng), random_smooth(rng)
    ref = convolve_new(f, g, A, Realization.DIRECT).values
    for how in (Realization.CHIRP_ONE, Realization.CHIRP_TWO):
        assert sup_relative_error(convolve_new(f, g, A, how).values, ref) <= 1e-6


def test_direct_sum_matches_continuum_integral():
    """scipy quad of the defining integral at grid points of the output."""
    A = A123
    f_fn, g_fn = gauss_fn(0.0, 1.0), gauss_fn(0.5, 0.7)
    f = gaussian()
    g = gaussian(center=0.5, width=0.7)
    h = convolve_new(f, g, A, Realization.DIRECT)
    for idx in (400, 480, 511, 530, 600):
        t = h.t[idx]

        def integrand(u):
            return f_fn(u) * g_fn(t - u + A.b) * np.exp(
                1j * (A.a / A.b * u**2 - A.a / A.b * u * t + A.a * t - A.a * u))

        ref = A.normalization * quad_complex(integrand, -12, 12)
        assert h.values[idx] == pytest.approx(ref, abs=1e-10)


def test_fourier_case_closed_form():
    # a = 0: f (x) g (t) = C (f * g)(t + b); Gaussian self-convolution sqrt(pi) e^{-s^2/4}
    f = gaussian()
    h = convolve_new(f, f, FOURIER)
    expected = FOURIER.normalization * math.sqrt(math.pi) * np.exp(-((h.t + 1) ** 2) / 4)
    assert np.abs(h.values - expected).max() <= 1e-10


def test_crop_onto_input_window():
    A = LctParams(1, 0.5, 0, 1)  # b = 16 steps: the shift stays on the lattice
    f, g = gaussian(), gaussian(center=0.5)
    full = convolve_new(f, g, A)
    cropped = convolve_new(f, g, A, crop=True)
    assert cropped.grid == f.grid
    offset = round(full.grid.offset_in_steps(f.grid))
    np.testing.assert_array_equal(cropped.values, full.values[offset:offset + f.grid.count])


def test_incompatible_steps():
    g = gaussian(SampleGrid.centered(GRID.step * 2, 256))
    with pytest.raises(IncompatibleGrids):
        convolve_new(gaussian(), g, A123)


def test_guard_on_coarse_grid():
    coarse = SampleGrid.centered(0.25, 64)
    f = SampledSignal(coarse, np.ones(64))
    with pytest.raises(GridTooCoarse):
        convolve_new(f, f, LctParams(5, 0.5, 8, 1))


def test_convolution_theorem_example():
    rep = verify_convolution_theorem(gaussian(), gaussian(center=1, width=0.7), A123)
    assert rep.passed and rep.max_rel_error <= 1e-6


def test_associativity_and_distributivity(rng):
    grid = SampleGrid.centered(GRID.step, 384)
    f, g, h = (random_smooth(rng, grid) for _ in range(3))
    left = convolve_new(convolve_new(f, g, A123), h, A123)
    right = convolve_new(f, convolve_new(g, h, A123), A123)
    assert sup_relative_error(left.values, right.values) <= 1e-6
    lhs = convolve_new(f, g + h, A123).values
    rhs = (convolve_new(f, g, A123) + convolve_new(f, h, A123)).values
    assert sup_relative_error(lhs, rhs) <= 1e-10


def test_l1_bound(rng):
    for A in TEST_MATRICES:
        f, g = random_smooth(rng), random_smooth(rng)
        h = convolve_new(f, g, A)
        lhs = h.grid.step * np.abs(h.values).sum()
        l1 = lambda s: s.grid.step * np.abs(s.values).sum()
        assert lhs <= l1(f) * l1(g) / math.sqrt(2 * math.pi * abs(A.b)) * (1 + 1e-6)


# --- dual operator ----------------------------------------------------------

def test_dual_zero():
    assert not np.any(convolve_new_dual(ZERO, gaussian(), A123).values)


def test_dual_commutative(rng):
    f, g = random_smooth(rng), random_smooth(rng)
    x = convolve_new_dual(f, g, A123).values
    y = convolve_new_dual(g, f, A123).values
    assert sup_relative_error(x, y) <= 1e-8


@pytest.mark.parametrize("how", [Realization.CHIRP_ONE, Realization.CHIRP_TWO])
def test_dual_chirp_matches_direct(how, rng):
    f, g = random_smooth(rng), random_smooth(rng)
    ref = convolve_new_dual(f, g, A123, Realization.DIRECT).values
    assert sup_relative_error(convolve_new_dual(f, g, A123, how).values, ref) <= 1e-6


def test_dual_direct_matches_continuum_integral():
    A = LctParams(1, -1, 2, -1)
    f_fn, g_fn = gauss_fn(0.0, 1.0), gauss_fn(-0.5, 0.8)
    h = convolve_new_dual(gaussian(), gaussian(center=-0.5, width=0.8), A, Realization.DIRECT)
    for idx in (420, 500, 530):
        t = h.t[idx]

        def integrand(u):
            return f_fn(u) * g_fn(t - u - A.b) * np.exp(
                1j * (A.a / A.b * u**2 - A.a / A.b * u * t - A.a * t + A.a * u))

        assert h.values[idx] == pytest.approx(A.normalization * quad_complex(integrand, -12, 12), abs=1e-10)


def test_dual_convolution_theorem(rng):
    for A in TEST_MATRICES:
        rep = verify_convolution_theorem(random_smooth(rng), random_smooth(rng), A, dual=True)
        assert rep.passed, (A, rep.max_rel_error)


# --- comparison operators -----------------------------------------------------

def test_deng_zero():
    assert not np.any(convolve_deng(ZERO, gaussian(), A123).values)


def test_deng_reduces_to_scaled_classical_convolution_when_a_is_zero(rng):
    f, g = random_smooth(rng), random_smooth(rng)
    h = convolve_deng(f, g, FOURIER)
    classical = np.convolve(f.values, g.values) * GRID.step
    np.testing.assert_allclose(h.values, FOURIER.normalization * classical, atol=1e-12)


def test_deng_identity():
    rep = verify_deng(gaussian(), gaussian(center=1, width=0.7), A123)
    assert rep.max_rel_error <= 1e-6


def test_deng_matches_continuum_integral():
    A = A123
    f_fn, g_fn = gauss_fn(0.0, 1.0), gauss_fn(1.0, 0.7)
    h = convolve_deng(gaussian(), gaussian(center=1, width=0.7), A)
    for idx in (480, 540):
        t = h.t[idx]
        val = quad_complex(lambda s: f_fn(s) * g_fn(t - s) * np.exp(-1j * A.a / A.b * s * (t - s)), -12, 12)
        assert h.values[idx] == pytest.approx(A.normalization * val, abs=1e-10)


def test_shi_zero():
    assert not np.any(convolve_shi(gaussian(), ZERO, A123).values)


def test_shi_reduces_to_classical_convolution_when_a_is_zero(rng):
    f, g = random_smooth(rng), random_smooth(rng)
    h = convolve_shi(f, g, FOURIER)
    np.testing.assert_allclose(h.values, np.convolve(f.values, g.values) * GRID.step, atol=1e-12)


def test_shi_matches_continuum_integral():
    A = A123
    f_fn, g_fn = gauss_fn(0.0, 1.0), gauss_fn(1.0, 0.7)
    h = convolve_shi(gaussian(), gaussian(center=1, width=0.7), A)
    for idx in (480, 540):
        t = h.t[idx]
        val = quad_complex(
            lambda tau: f_fn(t - tau) * g_fn(tau) * np.exp(-1j * A.a / A.b * tau * (t - tau / 2)), -12, 12)
        assert h.values[idx] == pytest.approx(val, abs=1e-10)


def test_shi_ratio_is_sqrt_two_pi():
    rep = verify_shi(gaussian(), gaussian(center=1, width=0.7), A123)
    assert rep.max_rel_error <= 1e-6
    assert rep.details["ratio_abs"] == pytest.approx(math.sqrt(2 * math.pi), rel=1e-9)
    assert abs(rep.details["ratio_phase"]) <= 1e-9


def test_spectral_zero():
    assert not np.any(convolve_spectral(ZERO, gaussian(), A123).values)


def test_spectral_fourier_case_closed_form():
    f = gaussian()
    h = convolve_spectral(f, f, FOURIER)
    expected = np.exp(-1j * np.pi / 4) * math.sqrt(math.pi) * np.exp(-h.t**2 / 4) / math.sqrt(2 * math.pi)
    assert sup_relative_error(h.values, expected) <= 1e-6


@pytest.mark.parametrize("A", TEST_MATRICES, ids=MATRIX_IDS)
def test_spectral_equals_divided_new(A, rng):
    rep = verify_spectral(random_smooth(rng), random_smooth(rng), A)
    assert rep.max_rel_error <= 1e-6


def test_spectral_product_identity(rng):
    f, g = random_smooth(rng), random_smooth(rng)
    h = convolve_spectral(f, g, A123)
    n = h.grid.count
    u0 = -(n // 2) * 2 * np.pi * abs(A123.b) / (n * GRID.step)
    Fh = lct_forward(h, A123, count=n, u_start=u0)
    prod = lct_forward(f, A123, count=n, u_start=u0).values * lct_forward(g, A123, count=n, u_start=u0).values
    assert sup_relative_error(Fh.values, prod) <= 1e-10


def test_phi_is_the_only_factor():
    """The theorem fails by |1 - Phi| if the factor is left out entirely."""
    rep = verify_convolution_theorem(gaussian(), gaussian(center=1), A123,
                                     phase=lambda u, A: np.ones_like(u))
    assert not rep.passed
    assert np.allclose(np.abs(phi_factor(np.linspace(-3, 3, 7), A123)), 1)
