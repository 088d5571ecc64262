"""Frequency grids, sampled spectra and the Fourier bridge to time signals.

Transforms follow the convention ``X(w) = int exp(-i w t) x(t) dt`` with the
inverse ``x(t) = (1/2pi) int exp(i w t) X(w) dw``. Discrete versions are
scaled by ``dt`` (forward) and ``dw / 2pi`` (inverse), so sums approximate
these integrals.

A grid with ``n`` points covers ``[-omega_max, omega_max)`` with spacing
``dw = 2 omega_max / n``. Its conjugate time grid has ``dt = pi / omega_max``
and spans ``n dt``, which gives ``n dt dw = 2 pi``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Any, Mapping

import numpy as np

from .complex_core import FilterParams, transfer_eval

__all__ = [
    "GridOverflowError",
    "FrequencyGrid",
    "SpectrumSamples",
    "SampledSignal",
    "DEFAULT_TAIL_EPS",
    "DEFAULT_RESOLUTION_FACTOR",
    "DEFAULT_MAX_SAMPLES",
    "auto_grid",
    "grid_for_signal",
    "sample_frequency_response",
    "impulse_response",
    "forward_transform",
    "inverse_transform",
]

DEFAULT_TAIL_EPS = 1e-12
DEFAULT_RESOLUTION_FACTOR = 16.0
DEFAULT_MAX_SAMPLES = 2**24


class GridOverflowError(OverflowError):
    """The requested grid needs more samples than the configured cap."""


def _is_pow2(n: int) -> bool:
    return n > 0 and n & (n - 1) == 0


def _next_pow2(x: float) -> int:
    return 1 << max(0, math.ceil(math.log2(max(x, 1.0))))


@dataclass(frozen=True)
class FrequencyGrid:
    omega_max: float
    n: int

    def __post_init__(self):
        if not (math.isfinite(self.omega_max) and self.omega_max > 0):
            raise ValueError(f"omega_max must be positive, got {self.omega_max}")
        if not isinstance(self.n, (int, np.integer)) or self.n < 8 or not _is_pow2(int(self.n)):
            raise ValueError(f"n must be a power of two >= 8, got {self.n}")
        object.__setattr__(self, "omega_max", float(self.omega_max))
        object.__setattr__(self, "n", int(self.n))

    @property
    def d_omega(self) -> float:
        return 2.0 * self.omega_max / self.n

    @property
    def dt(self) -> float:
        """Sample spacing of the conjugate time grid."""
        return math.pi / self.omega_max

    @property
    def omegas(self) -> np.ndarray:
        return -self.omega_max + np.arange(self.n) * self.d_omega

    @property
    def centered_t0(self) -> float:
        return -0.5 * self.n * self.dt

    def as_dict(self) -> dict:
        return {"omega_max": self.omega_max, "n": self.n, "d_omega": self.d_omega, "dt": self.dt}


@dataclass(frozen=True)
class SpectrumSamples:
    grid: FrequencyGrid
    values: np.ndarray

    def __post_init__(self):
        values = np.asarray(self.values, dtype=np.complex128)
        if values.shape != (self.grid.n,):
            raise ValueError(f"expected {self.grid.n} spectrum values, got shape {values.shape}")
        object.__setattr__(self, "values", values)

    @property
    def omegas(self) -> np.ndarray:
        return self.grid.omegas

    @property
    def hermitian(self) -> bool:
        """True when ``values(-w) == conj(values(w))`` to 1e-12."""
        v = self.values
        half = self.grid.n // 2
        tol = 1e-12 * max(1.0, float(np.max(np.abs(v))))
        pos = v[half + 1 :]
        neg = v[half - 1 : 0 : -1]
        return bool(abs(v[half].imag) <= tol and np.all(np.abs(pos - np.conj(neg)) <= tol))


@dataclass(frozen=True)
class SampledSignal:
    """Uniformly sampled real signal, ``values[j]`` at time ``t0 + j dt``."""

    t0: float
    dt: float
    values: np.ndarray
    meta: Mapping[str, Any] = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if not (math.isfinite(self.dt) and self.dt > 0):
            raise ValueError(f"dt must be positive, got {self.dt}")
        if not math.isfinite(self.t0):
            raise ValueError("t0 must be finite")
        values = np.asarray(self.values, dtype=np.float64)
        if values.ndim != 1:
            raise ValueError("signal values must be one-dimensional")
        if not np.all(np.isfinite(values)):
            raise ValueError("signal values must be finite")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "t0", float(self.t0))
        object.__setattr__(self, "dt", float(self.dt))

    def __len__(self) -> int:
        return self.values.size

    @property
    def times(self) -> np.ndarray:
        return self.t0 + np.arange(self.values.size) * self.dt

    def energy(self) -> float:
        return float(np.sum(self.values**2) * self.dt)

    def l2_norm(self) -> float:
        return math.sqrt(self.energy())


def _round_up_sig(x: float, digits: int = 4) -> float:
    exp = math.floor(math.log10(x)) - digits + 1
    scale = 10.0**exp
    return math.ceil(x / scale - 1e-9) * scale


def auto_grid(
    p: FilterParams,
    tail_eps: float = DEFAULT_TAIL_EPS,
    resolution_factor: float = DEFAULT_RESOLUTION_FACTOR,
    max_n: int = DEFAULT_MAX_SAMPLES,
) -> FrequencyGrid:
    """Pick a grid for inverting the response of `p`.

    ``omega_max`` is the smallest frequency at which the closed-form
    envelope ``exp(-alpha cos(q pi/2) w**q)`` drops to `tail_eps`, rounded up
    to four significant digits. ``n`` is the smallest power of two whose
    time span ``n pi / omega_max`` covers ``resolution_factor * alpha``.

    Raises
    ------
    GridOverflowError
        If the required ``n`` exceeds `max_n`.
    """
    if not 0 < tail_eps < 1:
        raise ValueError(f"tail_eps must lie in (0, 1), got {tail_eps}")
    if not resolution_factor > 0:
        raise ValueError("resolution_factor must be positive")
    omega = (math.log(1.0 / tail_eps) / p.decay_rate) ** (1.0 / p.q)
    omega_max = _round_up_sig(omega)
    n = max(8, _next_pow2(resolution_factor * p.alpha * omega_max / math.pi))
    if n > max_n:
        raise GridOverflowError(f"grid needs n = {n} samples, above the cap of {max_n}")
    return FrequencyGrid(omega_max, n)


def grid_for_signal(dt: float, n: int) -> FrequencyGrid:
    """Grid whose conjugate time spacing equals `dt`."""
    return FrequencyGrid(math.pi / dt, n)


def sample_frequency_response(p: FilterParams, grid: FrequencyGrid) -> SpectrumSamples:
    return SpectrumSamples(grid, transfer_eval(p, 1j * grid.omegas))


def _check_time_grid(dt: float, grid: FrequencyGrid) -> None:
    if abs(dt - grid.dt) > 1e-9 * grid.dt:
        raise ValueError(
            f"signal spacing dt={dt} is incompatible with the grid (needs dt = pi/omega_max = {grid.dt})"
        )


def forward_transform(x: SampledSignal, grid: FrequencyGrid) -> SpectrumSamples:
    """Discrete ``X(w_k) = dt * sum_j exp(-i w_k t_j) x_j`` on `grid`."""
    if len(x) != grid.n:
        raise ValueError(f"signal has {len(x)} samples, grid has {grid.n}")
    _check_time_grid(x.dt, grid)
    sign = 1.0 - 2.0 * (np.arange(grid.n) % 2)
    omegas = grid.omegas
    values = x.dt * np.exp(-1j * omegas * x.t0) * np.fft.fft(x.values * sign)
    return SpectrumSamples(grid, values)


def inverse_transform(spectrum: SpectrumSamples, t0: float | None = None, *, complex_output: bool = False):
    """Discrete ``x(t_j) = (dw / 2pi) sum_k exp(i w_k t_j) X_k``.

    The time grid is ``t_j = t0 + j dt`` with ``dt = pi / omega_max``; by
    default it is centred on zero. Returns a `SampledSignal` holding the
    real part, with the relative imaginary residue in ``meta``. Pass
    ``complex_output=True`` to get the raw complex samples instead.
    """
    grid = spectrum.grid
    if t0 is None:
        t0 = grid.centered_t0
    sign = 1.0 - 2.0 * (np.arange(grid.n) % 2)
    shifted = spectrum.values * np.exp(1j * grid.omegas * t0)
    samples = (grid.d_omega / (2 * math.pi)) * grid.n * sign * np.fft.ifft(shifted)
    if complex_output:
        return samples
    peak = float(np.max(np.abs(samples))) if samples.size else 0.0
    residue = float(np.max(np.abs(samples.imag)) / peak) if peak > 0 else 0.0
    return SampledSignal(t0, grid.dt, samples.real, meta={"imag_residue": residue})


def impulse_response(p: FilterParams, grid: FrequencyGrid | None = None) -> SampledSignal:
    """Impulse response of `p` on the centred time grid conjugate to `grid`.

    The frequency response is truncated at ``omega_max`` without windowing.
    The unpaired sample at ``-omega_max`` is replaced by its real part (the
    average of the response at ``+-omega_max``), which makes the sampled
    spectrum exactly Hermitian.
    """
    if grid is None:
        grid = auto_grid(p)
    spectrum = sample_frequency_response(p, grid)
    values = spectrum.values.copy()
    values[0] = values[0].real
    h = inverse_transform(SpectrumSamples(grid, values))
    meta = dict(h.meta)
    meta.update(grid=grid.as_dict(), filter=p.as_dict())
    return SampledSignal(h.t0, h.dt, h.values, meta=meta)
