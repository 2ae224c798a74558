"""Canonical convolution operators.

``new`` is the operator

    (f (x)_A g)(t) = sqrt(1/(j 2 pi b)) * integral f(u) g(t - u + b)
                     exp(j (a/b) u^2 - j (a/b) u t + j a t - j a u) du

whose LCT is ``Phi(u) L_A f(u) L_A g(u)``.  It factors as chirp, ordinary
convolution, chirp in two ways, depending on which factor carries the
linear phase ``exp(j a s)``; together with the direct sum that gives three
interchangeable realizations.  ``dual`` mirrors it (shift -b, linear phases
negated).  ``deng``, ``shi`` and ``spectral`` are the comparison operators.

All outputs live on the grid of the full linear-convolution support.  The
shift by ``b`` moves that grid rather than the samples, so no interpolation
is involved unless a crop onto an unaligned window is requested.
"""

from __future__ import annotations

import enum

import numpy as np
from scipy import fft as sfft

from .core import (
    LctParams,
    SampledSignal,
    SampleGrid,
    Spectrum,
    lct_forward,
    lct_inverse,
    resample,
)
from .errors import GridTooCoarse, IncompatibleGrids


class Realization(str, enum.Enum):
    DIRECT = "direct"
    CHIRP_ONE = "chirp1"
    CHIRP_TWO = "chirp2"


def _check_steps(f: SampledSignal, g: SampledSignal):
    if not f.grid.same_step(g.grid):
        raise IncompatibleGrids(
            f"convolution needs equal steps, got {f.grid.step!r} and {g.grid.step!r}"
        )


def _linear_convolve(x: np.ndarray, y: np.ndarray) -> np.ndarray:
    n = x.size + y.size - 1
    nfft = sfft.next_fast_len(n)
    return sfft.ifft(sfft.fft(x, nfft) * sfft.fft(y, nfft))[:n]


def _check_phase_rate(coef_u, coef_t, const, u_support, t_range, step):
    """Guard on ``d/du (phase) = coef_u u + coef_t t + const`` over a box."""
    if u_support.size == 0:
        return
    us = (u_support.min(), u_support.max())
    worst = max(abs(coef_u * u + coef_t * t + const) for u in us for t in t_range) * step
    if worst > np.pi:
        raise GridTooCoarse(
            f"integrand phase advances {worst:.3g} rad per sample (> pi); refine the grid"
        )


def _finish(h: SampledSignal, f: SampledSignal, crop: bool) -> SampledSignal:
    return resample(h, f.grid) if crop else h


def _canonical(f, g, A: LctParams, shift, sign, how):
    """Shared body of ``new`` (shift=b, sign=+1) and ``dual`` (shift=-b, sign=-1).

    Kernel: f(u) g(t - u + shift) exp(j (a/b)(u^2 - u t) + j sign a (t - u)).
    """
    _check_steps(f, g)
    how = Realization(how)
    a, b = A.a, A.b
    dt = f.grid.step
    out_grid = SampleGrid(f.grid.start + g.grid.start - shift, dt, f.grid.count + g.grid.count - 1)
    t = out_grid.points
    u = f.t
    _check_phase_rate(2 * a / b, -a / b, -sign * a, u[f.values != 0],
                      (out_grid.start, out_grid.stop), dt)
    scale = A.normalization * dt

    if how is Realization.DIRECT:
        out = np.zeros(out_grid.count, dtype=complex)
        k = np.arange(f.grid.count)
        fv = f.values
        gv = g.values
        for lo in range(0, out_grid.count, 256):
            m = np.arange(lo, min(lo + 256, out_grid.count))[:, None]
            idx = m - k[None, :]
            valid = (idx >= 0) & (idx < g.grid.count)
            gk = np.where(valid, gv[np.clip(idx, 0, g.grid.count - 1)], 0)
            tm = t[m]
            phase = (a / b) * (u**2 - u * tm) + sign * a * (tm - u)
            out[lo:lo + m.shape[0]] = np.sum(fv * gk * np.exp(1j * phase), axis=1)
        return SampledSignal(out_grid, scale * out)

    # g(s + shift) sampled on its own values, grid moved by -shift
    s = g.t - shift
    chirp_f = np.exp(0.5j * a / b * u**2)
    chirp_g = np.exp(0.5j * a / b * s**2)
    post = np.exp(-0.5j * a / b * t**2)
    if how is Realization.CHIRP_ONE:
        x = chirp_f * f.values
        y = np.exp(1j * sign * a * s) * chirp_g * g.values
    else:
        x = np.exp(-1j * sign * a * u) * chirp_f * f.values
        y = chirp_g * g.values
        post = post * np.exp(1j * sign * a * t)
    return SampledSignal(out_grid, scale * post * _linear_convolve(x, y))


def convolve_new(f: SampledSignal, g: SampledSignal, A: LctParams,
                 how=Realization.CHIRP_ONE, *, crop=False) -> SampledSignal:
    """``f (x)_A g`` on the full support grid (start ``t_f + t_g - b``).

    ``crop=True`` resamples the result onto ``f``'s grid.
    """
    return _finish(_canonical(f, g, A, A.b, +1, how), f, crop)


def convolve_new_dual(f: SampledSignal, g: SampledSignal, A: LctParams,
                      how=Realization.CHIRP_ONE, *, crop=False) -> SampledSignal:
    """Mirror operator: shift ``g`` by ``-b`` and negate the linear phases.

    Full support grid starts at ``t_f + t_g + b``; its LCT is
    ``phi_factor(u, A, dual=True) L_A f L_A g``.
    """
    return _finish(_canonical(f, g, A, -A.b, -1, how), f, crop)


def convolve_deng(f: SampledSignal, g: SampledSignal, A: LctParams, *, crop=False) -> SampledSignal:
    """``sqrt(1/(j 2 pi b)) * integral f(tau) g(t - tau) exp(-j (a/b) tau (t - tau)) dtau``.

    With that normalization ``L_A(result) = L_A f * L_A g * exp(-j d u^2 / 2b)``.
    """
    _check_steps(f, g)
    a, b = A.a, A.b
    dt = f.grid.step
    out_grid = SampleGrid(f.grid.start + g.grid.start, dt, f.grid.count + g.grid.count - 1)
    _check_phase_rate(2 * a / b, -a / b, 0.0, f.t[f.values != 0],
                      (out_grid.start, out_grid.stop), dt)
    x = np.exp(0.5j * a / b * f.t**2) * f.values
    y = np.exp(0.5j * a / b * g.t**2) * g.values
    post = A.normalization * dt * np.exp(-0.5j * a / b * out_grid.points**2)
    return _finish(SampledSignal(out_grid, post * _linear_convolve(x, y)), f, crop)


def convolve_shi(f: SampledSignal, g: SampledSignal, A: LctParams, *, crop=False) -> SampledSignal:
    """``integral f(t - tau) g(tau) exp(-j (a/b) tau (t - tau/2)) dtau``.

    The chirp rides on ``f``'s argument, so
    ``L_A(result)(u) = sqrt(2 pi) L_A f(u) F g(u / b)`` with the unitary
    Fourier transform ``F``.
    """
    _check_steps(f, g)
    a, b = A.a, A.b
    dt = f.grid.step
    out_grid = SampleGrid(f.grid.start + g.grid.start, dt, f.grid.count + g.grid.count - 1)
    _check_phase_rate(a / b, -a / b, 0.0, g.t[g.values != 0],
                      (out_grid.start, out_grid.stop), dt)
    x = np.exp(0.5j * a / b * f.t**2) * f.values
    post = dt * np.exp(-0.5j * a / b * out_grid.points**2)
    return _finish(SampledSignal(out_grid, post * _linear_convolve(x, g.values)), f, crop)


def spectral_grids(f: SampledSignal, g: SampledSignal, A: LctParams):
    """Common (count, u_start) for spectra of ``f``, ``g`` and their convolutions."""
    _check_steps(f, g)
    n = f.grid.count + g.grid.count - 1
    du = 2 * np.pi * abs(A.b) / (n * f.grid.step)
    return n, -(n // 2) * du


def convolve_spectral(f: SampledSignal, g: SampledSignal, A: LctParams, *, crop=False) -> SampledSignal:
    """``L_{A^-1}(L_A f * L_A g)``, computed with the fast transform.

    Output grid starts at ``t_f + t_g`` with ``len(f) + len(g) - 1`` points.
    """
    n, u0 = spectral_grids(f, g, A)
    F = lct_forward(f, A, count=n, u_start=u0)
    G = lct_forward(g, A, count=n, u_start=u0)
    target = SampleGrid(f.grid.start + g.grid.start, f.grid.step, n)
    h = lct_inverse(Spectrum(F.grid, F.values * G.values, A), target)
    return _finish(h, f, crop)


OPERATORS = {
    "new": convolve_new,
    "dual": convolve_new_dual,
    "deng": convolve_deng,
    "shi": convolve_shi,
    "spectral": convolve_spectral,
}
