"""Parameters, sampling grids and the discrete linear canonical transform.

The LCT with matrix ``A = (a, b, c, d)``, ``ad - bc = 1``, ``b != 0`` is

    L_A f(u) = sqrt(1/(j 2 pi b)) * exp(j d u^2 / 2b)
               * integral f(t) exp(j a t^2 / 2b) exp(-j u t / b) dt

The fast path evaluates the Riemann sum of that integral exactly on a
u-grid whose spacing is ``2 pi |b| / (M dt)``: chirp-multiply, one FFT of
length M, chirp-multiply.  :func:`lct_oracle` evaluates the same integral by
brute-force trapezoidal quadrature on any u-grid.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import (
    DeterminantViolation,
    GridTooCoarse,
    IncompatibleGrids,
    ZeroB,
)

DET_TOL = 1e-12
B_MIN = 1e-12
STEP_RTOL = 1e-12
# offsets closer than this (in units of the step) to an integer count as aligned
ALIGN_TOL = 1e-9


@dataclass(frozen=True)
class LctParams:
    """Unimodular parameter matrix ``[[a, b], [c, d]]`` with ``b != 0``."""

    a: float
    b: float
    c: float
    d: float

    def __post_init__(self):
        for name in ("a", "b", "c", "d"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"parameter {name} is not finite: {value}")
            object.__setattr__(self, name, value)
        det = self.a * self.d - self.b * self.c
        if abs(det - 1.0) > DET_TOL:
            raise DeterminantViolation(
                f"determinant violation: ad - bc = {det!r}, expected 1"
            )
        if abs(self.b) < B_MIN:
            raise ZeroB(f"|b| = {abs(self.b)!r} < {B_MIN}; the b = 0 case is unsupported")

    def as_tuple(self):
        return (self.a, self.b, self.c, self.d)

    @property
    def normalization(self) -> complex:
        """Principal branch of ``sqrt(1 / (j 2 pi b))``."""
        return np.exp(-1j * np.sign(self.b) * np.pi / 4) / math.sqrt(
            2 * math.pi * abs(self.b)
        )

    @classmethod
    def fractional(cls, alpha: float) -> "LctParams":
        """Fractional Fourier transform of angle ``alpha``."""
        return cls(math.cos(alpha), math.sin(alpha), -math.sin(alpha), math.cos(alpha))


FOURIER = LctParams(0.0, 1.0, -1.0, 0.0)


def make_params(a, b, c, d) -> LctParams:
    return LctParams(a, b, c, d)


def invert_params(A: LctParams) -> LctParams:
    """Inverse matrix ``(d, -b, -c, a)``; exact, since det(A) = 1."""
    return LctParams(A.d, -A.b, -A.c, A.a)


@dataclass(frozen=True)
class SampleGrid:
    """Uniform grid ``start + k * step`` for ``0 <= k < count``."""

    start: float
    step: float
    count: int

    def __post_init__(self):
        object.__setattr__(self, "start", float(self.start))
        object.__setattr__(self, "step", float(self.step))
        if int(self.count) != self.count:
            raise ValueError(f"count must be an integer, got {self.count!r}")
        object.__setattr__(self, "count", int(self.count))
        if not (math.isfinite(self.start) and math.isfinite(self.step)):
            raise ValueError("grid start and step must be finite")
        if self.step <= 0:
            raise ValueError(f"grid step must be positive, got {self.step!r}")
        if self.count < 2:
            raise ValueError(f"grid needs at least 2 points, got {self.count}")

    @classmethod
    def centered(cls, step: float, count: int) -> "SampleGrid":
        """Grid with ``count // 2`` points left of the origin and 0 on the grid."""
        return cls(-(count // 2) * step, step, count)

    @classmethod
    def interval(cls, lo: float, hi: float, count: int) -> "SampleGrid":
        """Half-open ``[lo, hi)`` split into ``count`` cells."""
        return cls(lo, (hi - lo) / count, count)

    @property
    def points(self) -> np.ndarray:
        return self.start + self.step * np.arange(self.count)

    @property
    def stop(self) -> float:
        """Last grid point (inclusive)."""
        return self.start + self.step * (self.count - 1)

    def point(self, k: int) -> float:
        return self.start + k * self.step

    def offset_in_steps(self, other: "SampleGrid") -> float:
        """Position of ``other.start`` on this grid's lattice, in steps."""
        return (other.start - self.start) / self.step

    def same_step(self, other: "SampleGrid") -> bool:
        return abs(self.step - other.step) <= STEP_RTOL * max(1.0, self.step)

    def summary(self) -> dict:
        return {"start": self.start, "step": self.step, "count": self.count}


@dataclass(frozen=True, eq=False)
class SampledSignal:
    """Complex samples of a function on a uniform time grid."""

    grid: SampleGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=complex).reshape(-1)
        if values.size != self.grid.count:
            raise ValueError(
                f"{values.size} values for a grid of {self.grid.count} points"
            )
        if not np.all(np.isfinite(values)):
            raise ValueError("signal contains NaN or Inf")
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @property
    def t(self) -> np.ndarray:
        return self.grid.points

    def __len__(self):
        return self.grid.count

    def _check_same_grid(self, other):
        g, h = self.grid, other.grid
        if g.count != h.count or not g.same_step(h) or abs(g.start - h.start) > ALIGN_TOL * g.step:
            raise IncompatibleGrids("signals live on different grids; use resample() first")

    def __add__(self, other):
        if isinstance(other, SampledSignal):
            self._check_same_grid(other)
            return self.with_values(self.values + other.values)
        return NotImplemented

    def __sub__(self, other):
        if isinstance(other, SampledSignal):
            self._check_same_grid(other)
            return self.with_values(self.values - other.values)
        return NotImplemented

    def __mul__(self, scalar):
        if np.isscalar(scalar):
            return self.with_values(self.values * scalar)
        return NotImplemented

    __rmul__ = __mul__

    def __neg__(self):
        return self.with_values(-self.values)

    def with_values(self, values):
        return SampledSignal(self.grid, values)


@dataclass(frozen=True, eq=False)
class Spectrum(SampledSignal):
    """Samples of ``L_A f`` on a u-grid, tagged with the ``A`` that made them."""

    params: LctParams = field(default=None)

    def __post_init__(self):
        super().__post_init__()
        if not isinstance(self.params, LctParams):
            raise TypeError("Spectrum needs the LctParams it was produced under")

    @property
    def u(self) -> np.ndarray:
        return self.grid.points

    def with_values(self, values):
        return Spectrum(self.grid, values, self.params)


def dual_step(step: float, count: int, b: float) -> float:
    """Spacing of the grid paired with (``step``, ``count``) by the LCT kernel."""
    return 2 * math.pi * abs(b) / (count * step)


def union_grid(base: SampleGrid, other: SampleGrid) -> SampleGrid:
    """Smallest grid on ``base``'s lattice covering both ``base`` and ``other``."""
    if not base.same_step(other):
        raise IncompatibleGrids(f"steps differ: {base.step!r} vs {other.step!r}")
    lo = math.floor(base.offset_in_steps(other) + ALIGN_TOL)
    hi = math.ceil((other.stop - base.start) / base.step - ALIGN_TOL)
    first = min(0, lo)
    last = max(base.count - 1, hi)
    return SampleGrid(base.start + first * base.step, base.step, last - first + 1)


def resample(signal: SampledSignal, grid: SampleGrid) -> SampledSignal:
    """Move ``signal`` onto ``grid`` (same step), zero outside its support.

    Aligned lattices are copied sample for sample.  Otherwise the values are
    linearly interpolated, which costs O(step^2) accuracy.
    """
    src = signal.grid
    if not src.same_step(grid):
        raise IncompatibleGrids(f"steps differ: {src.step!r} vs {grid.step!r}")
    shift = src.offset_in_steps(grid)
    k = round(shift)
    out = np.zeros(grid.count, dtype=complex)
    if abs(shift - k) <= ALIGN_TOL:
        # grid index i sits at source index i + k
        lo = max(0, -k)
        hi = min(grid.count, src.count - k)
        if hi > lo:
            out[lo:hi] = signal.values[lo + k:hi + k]
        return SampledSignal(grid, out)
    t = grid.points
    v = signal.values
    out = np.interp(t, src.points, v.real, left=0.0, right=0.0) + 1j * np.interp(
        t, src.points, v.imag, left=0.0, right=0.0
    )
    return SampledSignal(grid, out)


def check_chirp_resolution(rate: float, t: np.ndarray, step: float, what="input chirp"):
    """Raise GridTooCoarse if ``exp(j rate t^2 / 2)`` is under-sampled on ``t``.

    ``rate`` is the second derivative of the phase; the per-sample increment
    near ``t`` is ``|rate * t| * step``.
    """
    if t.size == 0 or rate == 0:
        return
    worst = abs(rate) * float(np.max(np.abs(t))) * step
    if worst > math.pi:
        raise GridTooCoarse(
            f"{what} advances {worst:.3g} rad per sample (> pi); refine the grid"
        )


def _support(signal: SampledSignal) -> np.ndarray:
    return signal.t[signal.values != 0]


def _kernel_sum(values, grid: SampleGrid, chirp_rate, b, count, u_start):
    """``step * sum_k v_k exp(j chirp_rate t_k^2 / 2) exp(-j u_m t_k / b)``.

    Evaluated for ``u_m = u_start + m du``, ``du = dual_step(step, count, b)``,
    by folding the input modulo ``count`` and one FFT.  Exact for any input
    length.
    """
    t = grid.points
    du = dual_step(grid.step, count, b)
    x = values * np.exp(0.5j * chirp_rate * t**2) * np.exp(-1j * u_start * t / b)
    n = x.size
    if n != count:
        blocks = -(-n // count)
        x = np.concatenate([x, np.zeros(blocks * count - n, dtype=complex)])
        x = x.reshape(blocks, count).sum(axis=0)
    # du * step / b = 2 pi sign(b) / count
    if b > 0:
        y = np.fft.fft(x)
    else:
        y = np.fft.ifft(x) * count
    m = np.arange(count)
    y *= np.exp(-1j * m * du * grid.start / b)
    return grid.step * y, SampleGrid(u_start, du, count)


def lct_forward(f: SampledSignal, A: LctParams, *, count=None, u_start=None) -> Spectrum:
    """Discrete LCT of ``f`` by chirp, FFT, chirp.

    The u-grid has ``count`` points (default ``len(f)``) spaced
    ``2 pi |b| / (count dt)``.  By default it is centred like the input
    grid, i.e. ``u_start / du == t_start / dt``.
    """
    count = f.grid.count if count is None else int(count)
    du = dual_step(f.grid.step, count, A.b)
    if u_start is None:
        u_start = f.grid.start / f.grid.step * du
    check_chirp_resolution(A.a / A.b, _support(f), f.grid.step)
    s, ugrid = _kernel_sum(f.values, f.grid, A.a / A.b, A.b, count, u_start)
    u = ugrid.points
    values = A.normalization * np.exp(0.5j * A.d / A.b * u**2) * s
    return Spectrum(ugrid, values, A)


def induced_time_grid(F: Spectrum, count=None) -> SampleGrid:
    count = F.grid.count if count is None else count
    dt = dual_step(F.grid.step, count, F.params.b)
    return SampleGrid(F.grid.start / F.grid.step * dt, dt, count)


def lct_inverse(F: Spectrum, target_grid: SampleGrid | None = None) -> SampledSignal:
    """Apply ``L_{A^-1}`` to a spectrum produced under ``A``.

    ``target_grid`` must satisfy ``step == 2 pi |b| / (count du)``; it
    defaults to the grid centred like ``F``'s.  No chirp-resolution check is
    made here: the inverse input chirp cancels the forward output chirp
    sample for sample, so the discrete round trip is exact.
    """
    inv = invert_params(F.params)
    if target_grid is None:
        target_grid = induced_time_grid(F)
    expected = dual_step(F.grid.step, target_grid.count, inv.b)
    if abs(target_grid.step - expected) > 1e-9 * expected:
        raise IncompatibleGrids(
            f"target step {target_grid.step!r} does not pair with the u-grid "
            f"(expected {expected!r} for {target_grid.count} points)"
        )
    s, _ = _kernel_sum(F.values, F.grid, inv.a / inv.b, inv.b, target_grid.count,
                       target_grid.start)
    t = target_grid.points
    values = inv.normalization * np.exp(0.5j * inv.d / inv.b * t**2) * s
    return SampledSignal(target_grid, values)


def lct_oracle(f: SampledSignal, A: LctParams, u_grid: SampleGrid) -> Spectrum:
    """Trapezoidal quadrature of the defining integral at every ``u`` in ``u_grid``.

    O(N M) and independent of the FFT path; the signal is taken as zero off
    its grid.
    """
    t = f.t
    w = np.full(t.size, f.grid.step)
    w[0] = w[-1] = 0.5 * f.grid.step
    u = u_grid.points
    out = np.empty(u.size, dtype=complex)
    weighted = w * f.values * np.exp(0.5j * A.a / A.b * t**2)
    # rows in blocks to bound memory
    for lo in range(0, u.size, 256):
        uu = u[lo:lo + 256, None]
        out[lo:lo + 256] = np.exp(-1j * uu * t[None, :] / A.b) @ weighted
    out *= A.normalization * np.exp(0.5j * A.d / A.b * u**2)
    return Spectrum(u_grid, out, A)
