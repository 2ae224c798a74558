"""Phase factor, discrete norms, Young constants and identity verifiers.

Every ``verify_*`` function computes both sides of one identity numerically
and returns a :class:`VerifierReport`.  Spectral identities are compared
pointwise on the band where the reference exceeds 1e-3 of its peak;
time-domain identities use the relative sup-norm.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np

from .convolution import (
    Realization,
    convolve_deng,
    convolve_new,
    convolve_new_dual,
    convolve_shi,
    convolve_spectral,
    spectral_grids,
)
from .core import (
    LctParams,
    SampledSignal,
    SampleGrid,
    Spectrum,
    lct_forward,
    lct_inverse,
    lct_oracle,
)
from .errors import IncompatibleGrids, InvalidExponent

INF = math.inf
BAND_FLOOR = 1e-3


def phi_factor(u, A: LctParams, dual=False):
    """``exp(j u - j d u^2 / 2b - j a b / 2)``; ``dual=True`` flips the sign of ``u``
    in the linear term, which is the factor for the mirror operator."""
    u = np.asarray(u, dtype=float)
    lin = -u if dual else u
    return np.exp(1j * (lin - A.d / (2 * A.b) * u**2 - A.a * A.b / 2))


def norm_p(f: SampledSignal, p) -> float:
    """Riemann-sum L^p norm ``(dt * sum |f_k|^p)^(1/p)``; ``p = inf`` gives max |f_k|."""
    p = float(p)
    if not p >= 1:
        raise InvalidExponent(f"exponent must be >= 1, got {p!r}")
    mag = np.abs(f.values)
    if math.isinf(p):
        return float(mag.max())
    if p == 1:
        return float(f.grid.step * mag.sum())
    # scale first so large p cannot overflow
    peak = mag.max()
    if peak == 0:
        return 0.0
    return float(peak * (f.grid.step * np.sum((mag / peak) ** p)) ** (1 / p))


def conjugate_exponent(p: float) -> float:
    p = float(p)
    if p < 1:
        raise InvalidExponent(f"exponent must be >= 1, got {p!r}")
    if p == 1:
        return INF
    if math.isinf(p):
        return 1.0
    return p / (p - 1)


def _x_pow_inv_x(x):
    return 1.0 if math.isinf(x) else x ** (1 / x)


def young_constant(p) -> float:
    """Sharp Young constant ``(p^(1/p) / p'^(1/p'))^(1/2)``.

    Less than 1 on (1, 2), greater than 1 on (2, inf), and
    ``young_constant(p) * young_constant(p') == 1``.
    """
    p = float(p)
    return math.sqrt(_x_pow_inv_x(p) / _x_pow_inv_x(conjugate_exponent(p)))


def _inv(x):
    return 0.0 if math.isinf(x) else 1.0 / x


@dataclass(frozen=True)
class YoungExponents:
    p: float
    q: float
    r: float
    r_prime: float

    def __post_init__(self):
        for name in ("p", "q", "r", "r_prime"):
            value = float(getattr(self, name))
            if not value >= 1:
                raise InvalidExponent(f"{name} must lie in [1, inf], got {value!r}")
            object.__setattr__(self, name, value)
        if abs(_inv(self.p) + _inv(self.q) - 1 - _inv(self.r)) > 1e-12:
            raise InvalidExponent("need 1/p + 1/q = 1 + 1/r")
        if abs(_inv(self.r) + _inv(self.r_prime) - 1) > 1e-12:
            raise InvalidExponent("need 1/r + 1/r' = 1")

    @classmethod
    def from_pq(cls, p, q):
        s = _inv(float(p)) + _inv(float(q)) - 1
        if s < -1e-12:
            raise InvalidExponent(f"1/p + 1/q must be >= 1 (p={p}, q={q})")
        r = INF if abs(s) <= 1e-12 else 1 / s
        return cls(p, q, r, conjugate_exponent(r))


def young_bound(x: YoungExponents, A: LctParams) -> float:
    """``sqrt(1/(2 pi |b|)) A_p A_q A_r'``."""
    return (
        young_constant(x.p) * young_constant(x.q) * young_constant(x.r_prime)
        / math.sqrt(2 * math.pi * abs(A.b))
    )


def l1_constant(A: LctParams) -> float:
    return 1 / math.sqrt(2 * math.pi * abs(A.b))


@dataclass
class VerifierReport:
    identity: str
    max_rel_error: float
    tolerance: float
    grid: SampleGrid
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return bool(self.max_rel_error <= self.tolerance)

    def to_dict(self) -> dict:
        out = {
            "identity": self.identity,
            "max_rel_error": float(self.max_rel_error),
            "tolerance": float(self.tolerance),
            "passed": self.passed,
            "grid": self.grid.summary(),
        }
        if self.details:
            out["details"] = self.details
        return out

    def to_json(self, **kw) -> str:
        return json.dumps(self.to_dict(), **kw)


def band_relative_error(lhs, rhs, floor=BAND_FLOOR) -> float:
    """Max of ``|lhs - rhs| / |rhs|`` where ``|rhs| > floor * max|rhs|``."""
    lhs = np.asarray(lhs)
    rhs = np.asarray(rhs)
    peak = np.abs(rhs).max()
    if peak == 0:
        return float(np.abs(lhs).max())
    mask = np.abs(rhs) > floor * peak
    return float(np.max(np.abs(lhs - rhs)[mask] / np.abs(rhs)[mask]))


def sup_relative_error(x, y) -> float:
    """``max|x - y| / max|y|`` (absolute when ``y`` vanishes)."""
    x = np.asarray(x)
    y = np.asarray(y)
    diff = float(np.abs(x - y).max())
    peak = float(np.abs(y).max())
    return diff / peak if peak > 0 else diff


def _same_grid_values(x: SampledSignal, y: SampledSignal):
    if x.grid.count != y.grid.count or abs(x.grid.start - y.grid.start) > 1e-9 * x.grid.step:
        raise IncompatibleGrids("results of the two sides landed on different grids")
    return x.values, y.values


def _convolve(dual):
    return convolve_new_dual if dual else convolve_new


def verify_convolution_theorem(f, g, A, tol=1e-6, *, dual=False,
                               how=Realization.CHIRP_ONE, phase=None) -> VerifierReport:
    """``L_A(f (x)_A g) == Phi * L_A f * L_A g`` on a shared u-grid.

    ``phase`` replaces :func:`phi_factor` (signature ``phase(u, A)``); the
    mutation tests use it to check that a wrong factor is caught.
    """
    h = _convolve(dual)(f, g, A, how)
    n, u0 = spectral_grids(f, g, A)
    Ff = lct_forward(f, A, count=n, u_start=u0)
    Fg = lct_forward(g, A, count=n, u_start=u0)
    Fh = lct_forward(h, A, count=n, u_start=u0)
    if phase is None:
        weight = phi_factor(Ff.u, A, dual=dual)
    else:
        weight = phase(Ff.u, A)
    rhs = weight * Ff.values * Fg.values
    name = "conv-theorem-dual" if dual else "conv-theorem"
    return VerifierReport(name, band_relative_error(Fh.values, rhs), tol, Ff.grid)


def verify_realizations(f, g, A, tol=1e-6, *, dual=False) -> VerifierReport:
    """Pairwise agreement of the direct, chirp-one and chirp-two results."""
    conv = _convolve(dual)
    outs = [conv(f, g, A, how) for how in Realization]
    errs = {}
    for i in range(3):
        for j in range(i + 1, 3):
            key = f"{list(Realization)[i].value}-vs-{list(Realization)[j].value}"
            errs[key] = sup_relative_error(*_same_grid_values(outs[i], outs[j]))
    name = "realizations-dual" if dual else "realizations"
    return VerifierReport(name, max(errs.values()), tol, outs[0].grid, errs)


def verify_commutativity(f, g, A, tol=1e-8, *, dual=False) -> VerifierReport:
    conv = _convolve(dual)
    x, y = _same_grid_values(conv(f, g, A), conv(g, f, A))
    return VerifierReport("commutativity-dual" if dual else "commutativity",
                          sup_relative_error(x, y), tol, conv(f, g, A).grid)


def verify_associativity(f, g, h, A, tol=1e-6, *, dual=False) -> VerifierReport:
    conv = _convolve(dual)
    left = conv(conv(f, g, A), h, A)
    right = conv(f, conv(g, h, A), A)
    x, y = _same_grid_values(left, right)
    return VerifierReport("associativity-dual" if dual else "associativity",
                          sup_relative_error(x, y), tol, left.grid)


def verify_distributivity(f, g, h, A, tol=1e-10, *, dual=False) -> VerifierReport:
    """``f * (g + h) == f * g + f * h``; ``g`` and ``h`` must share a grid."""
    conv = _convolve(dual)
    left = conv(f, g + h, A)
    right = conv(f, g, A) + conv(f, h, A)
    return VerifierReport("distributivity-dual" if dual else "distributivity",
                          sup_relative_error(left.values, right.values), tol, left.grid)


def verify_young(f, g, x: YoungExponents, A, tol=1e-6, *, dual=False) -> VerifierReport:
    """``||f (x)_A g||_r <= young_bound * ||f||_p ||g||_q``.

    ``max_rel_error`` is the relative excess of the left side over the bound
    (0 when the inequality holds).
    """
    h = _convolve(dual)(f, g, A)
    lhs = norm_p(h, x.r)
    rhs = young_bound(x, A) * norm_p(f, x.p) * norm_p(g, x.q)
    excess = max(0.0, lhs / rhs - 1) if rhs > 0 else (0.0 if lhs == 0 else INF)
    return VerifierReport(
        f"young(p={x.p:g},q={x.q:g},r={x.r:g})", excess, tol, h.grid,
        {"lhs": lhs, "rhs": rhs},
    )


def verify_l1_bound(f, g, A, tol=1e-6, *, dual=False) -> VerifierReport:
    h = _convolve(dual)(f, g, A)
    lhs = norm_p(h, 1)
    rhs = l1_constant(A) * norm_p(f, 1) * norm_p(g, 1)
    excess = max(0.0, lhs / rhs - 1) if rhs > 0 else (0.0 if lhs == 0 else INF)
    return VerifierReport("l1-bound", excess, tol, h.grid, {"lhs": lhs, "rhs": rhs})


def verify_deng(f, g, A, tol=1e-6) -> VerifierReport:
    """``L_A(f Theta g) == L_A f * L_A g * exp(-j d u^2 / 2b)``."""
    h = convolve_deng(f, g, A)
    n, u0 = spectral_grids(f, g, A)
    Ff = lct_forward(f, A, count=n, u_start=u0)
    Fg = lct_forward(g, A, count=n, u_start=u0)
    Fh = lct_forward(h, A, count=n, u_start=u0)
    rhs = Ff.values * Fg.values * np.exp(-0.5j * A.d / A.b * Ff.u**2)
    return VerifierReport("deng", band_relative_error(Fh.values, rhs), tol, Ff.grid)


def fourier_samples(f: SampledSignal, omega) -> np.ndarray:
    """Unitary Fourier transform ``(2 pi)^(-1/2) integral f(t) exp(-j omega t) dt``
    by direct summation."""
    omega = np.asarray(omega, dtype=float)
    out = np.empty(omega.size, dtype=complex)
    t = f.t
    for lo in range(0, omega.size, 256):
        w = omega[lo:lo + 256, None]
        out[lo:lo + 256] = np.exp(-1j * w * t[None, :]) @ f.values
    return out * f.grid.step / math.sqrt(2 * math.pi)


def verify_shi(f, g, A, tol=1e-6) -> VerifierReport:
    """Constancy of ``L_A(f Theta_M g)(u) / (L_A f(u) F g(u/b))`` over the band.

    The error is the coefficient of variation of the ratio; its mean
    (expected ``sqrt(2 pi)`` for the unitary ``F``) goes in ``details``.
    """
    h = convolve_shi(f, g, A)
    n, u0 = spectral_grids(f, g, A)
    Ff = lct_forward(f, A, count=n, u_start=u0)
    Fh = lct_forward(h, A, count=n, u_start=u0)
    den = Ff.values * fourier_samples(g, Ff.u / A.b)
    mag = np.abs(den)
    mask = mag > max(1e-6, BAND_FLOOR * mag.max())
    if not mask.any():
        return VerifierReport("shi", 0.0 if np.abs(Fh.values).max() == 0 else INF, tol, Ff.grid)
    ratio = Fh.values[mask] / den[mask]
    mean = ratio.mean()
    cv = float(np.sqrt(np.mean(np.abs(ratio - mean) ** 2)) / abs(mean))
    return VerifierReport("shi", cv, tol, Ff.grid,
                          {"ratio_abs": float(abs(mean)), "ratio_phase": float(np.angle(mean))})


def verify_spectral(f, g, A, tol=1e-6) -> VerifierReport:
    """``convolve_spectral(f, g) == L_{A^-1}(L_A(f (x)_A g) / Phi)``."""
    pei = convolve_spectral(f, g, A)
    n, u0 = spectral_grids(f, g, A)
    h = convolve_new(f, g, A, Realization.DIRECT)
    Fh = lct_forward(h, A, count=n, u_start=u0)
    other = lct_inverse(Spectrum(Fh.grid, Fh.values / phi_factor(Fh.u, A), A), pei.grid)
    return VerifierReport("spectral", sup_relative_error(pei.values, other.values), tol, pei.grid)


def verify_round_trip(f, A, tol=1e-6) -> VerifierReport:
    back = lct_inverse(lct_forward(f, A), f.grid)
    err = norm_p(back - f, 2)
    ref = norm_p(f, 2)
    return VerifierReport("round-trip", err / ref if ref > 0 else err, tol, f.grid)


def verify_oracle(f, A, tol=1e-6) -> VerifierReport:
    """Fast transform against trapezoidal quadrature on the fast path's u-grid."""
    F = lct_forward(f, A)
    ref = lct_oracle(f, A, F.grid)
    return VerifierReport("oracle", sup_relative_error(F.values, ref.values), tol, F.grid)


def verify_all(f, g, h, A, x: YoungExponents | None = None) -> list[VerifierReport]:
    """Every identity for one (f, g, h, A); ``g`` and ``h`` must share a grid."""
    x = x or YoungExponents.from_pq(1, 1)
    reports = [verify_round_trip(f, A), verify_oracle(f, A)]
    for dual in (False, True):
        reports += [
            verify_convolution_theorem(f, g, A, dual=dual),
            verify_realizations(f, g, A, dual=dual),
            verify_commutativity(f, g, A, dual=dual),
            verify_associativity(f, g, h, A, dual=dual),
            verify_distributivity(f, g, h, A, dual=dual),
        ]
    reports += [
        verify_l1_bound(f, g, A),
        verify_young(f, g, x, A),
        verify_deng(f, g, A),
        verify_shi(f, g, A),
        verify_spectral(f, g, A),
    ]
    return reports
