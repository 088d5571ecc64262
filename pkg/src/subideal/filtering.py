"""Causal convolution of sampled signals with sampled impulse responses.

The continuous output ``y(t) = int_0^inf h(s) x(t - s) ds`` is discretised
by the left-point Riemann sum ``y_j = dt * sum_k h_k x_{j-k}``. Only
kernel samples at ``t >= 0`` are used, so no future input enters an
output sample. Negative-time samples of a numerically computed kernel are
clipped and their share of the kernel energy is recorded.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass

import numpy as np
from scipy import signal as sps

from .complex_core import FilterParams, transfer_eval
from .spectral import SampledSignal

__all__ = [
    "SamplingRateMismatch",
    "StreamState",
    "causal_part",
    "convolve_direct",
    "convolve_fft",
    "stream_push",
    "filter_spectral",
]

logger = logging.getLogger(__name__)

TRAILING_FLOOR = 1e-15
RATE_RTOL = 1e-9


class SamplingRateMismatch(ValueError):
    """Kernel and input are sampled at different rates."""


def _check_rates(h: SampledSignal, x: SampledSignal) -> None:
    if abs(h.dt - x.dt) > RATE_RTOL * max(h.dt, x.dt):
        raise SamplingRateMismatch(f"kernel dt={h.dt} differs from input dt={x.dt}")


def causal_part(h: SampledSignal, floor: float = TRAILING_FLOOR) -> SampledSignal:
    """Restrict `h` to ``t >= 0`` and drop trailing samples below ``floor * peak``.

    ``meta["clipped_energy_fraction"]`` holds the share of the energy of `h`
    found at negative times.
    """
    t = h.times
    keep = t >= -1e-9 * h.dt
    if not np.any(keep):
        raise ValueError("kernel has no samples at t >= 0")
    first = int(np.argmax(keep))
    total = float(np.sum(h.values**2))
    clipped = float(np.sum(h.values[:first] ** 2))
    values = h.values[first:]
    peak = float(np.max(np.abs(values))) if values.size else 0.0
    if peak > 0:
        above = np.nonzero(np.abs(values) >= floor * peak)[0]
        values = values[: above[-1] + 1]
    else:
        values = values[:1]
    meta = dict(h.meta)
    meta.update(
        clipped_energy_fraction=clipped / total if total > 0 else 0.0,
        source_length=len(h),
        kernel_length=int(values.size),
    )
    t0 = float(t[first])
    if abs(t0) <= 1e-9 * h.dt:
        t0 = 0.0
    return SampledSignal(t0, h.dt, values, meta=meta)


def _prepare(h: SampledSignal, x: SampledSignal) -> SampledSignal:
    _check_rates(h, x)
    kernel = causal_part(h)
    frac = kernel.meta["clipped_energy_fraction"]
    if frac > 0:
        logger.debug("clipped %.3e of kernel energy at negative times", frac)
    return kernel


def _output(kernel: SampledSignal, x: SampledSignal, values: np.ndarray, mode: str) -> SampledSignal:
    meta = {
        "mode": mode,
        "clipped_energy_fraction": kernel.meta["clipped_energy_fraction"],
        "kernel_length": kernel.meta["kernel_length"],
    }
    return SampledSignal(x.t0 + kernel.t0, x.dt, values, meta=meta)


def convolve_direct(h: SampledSignal, x: SampledSignal) -> SampledSignal:
    """Causal convolution by direct summation, output aligned with `x`."""
    kernel = _prepare(h, x)
    y = x.dt * np.convolve(x.values, kernel.values)[: len(x)]
    return _output(kernel, x, y, "direct")


def convolve_fft(h: SampledSignal, x: SampledSignal) -> SampledSignal:
    """Same contract as `convolve_direct`, computed by FFT overlap-add."""
    kernel = _prepare(h, x)
    y = x.dt * sps.oaconvolve(x.values, kernel.values)[: len(x)]
    return _output(kernel, x, y, "fft")


@dataclass
class StreamState:
    """Running state for chunked causal filtering.

    Owned by a single caller; `stream_push` mutates `history` in place.
    """

    kernel: SampledSignal
    history: np.ndarray
    dt: float

    def __post_init__(self):
        self.history = np.asarray(self.history, dtype=np.float64)
        if self.history.size != len(self.kernel) - 1:
            raise ValueError("history must hold len(kernel) - 1 samples")
        if abs(self.kernel.dt - self.dt) > RATE_RTOL * self.dt:
            raise SamplingRateMismatch("kernel dt differs from stream dt")

    @classmethod
    def from_kernel(cls, h: SampledSignal) -> "StreamState":
        kernel = causal_part(h)
        return cls(kernel, np.zeros(len(kernel) - 1), kernel.dt)


def stream_push(state: StreamState, chunk) -> np.ndarray:
    """Filter the next `chunk` of input; returns an output chunk of equal length."""
    chunk = np.asarray(chunk, dtype=np.float64)
    if chunk.ndim != 1 or chunk.size == 0:
        raise ValueError("chunk must be a non-empty 1-d array")
    ext = np.concatenate([state.history, chunk])
    y = state.dt * np.convolve(ext, state.kernel.values, mode="valid")
    lag = state.history.size
    if lag:
        state.history = ext[-lag:].copy()
    return y


def filter_spectral(p: FilterParams, x: SampledSignal, pad_factor: int = 4) -> SampledSignal:
    """Apply `p` by multiplying the zero-padded spectrum of `x` by ``H(i w)``.

    The result lives on ``[x.t0, x.t0 + N dt)`` with ``N`` the padded
    length, so the causal tail of the output is kept rather than cut at the
    end of `x`. Frequencies above ``pi / dt`` are not represented.
    """
    if pad_factor < 1:
        raise ValueError("pad_factor must be >= 1")
    n = 1 << math.ceil(math.log2(max(2, pad_factor * len(x))))
    padded = np.zeros(n)
    padded[: len(x)] = x.values
    omegas = 2 * math.pi * np.fft.rfftfreq(n, d=x.dt)
    response = transfer_eval(p, 1j * omegas)
    y = np.fft.irfft(np.fft.rfft(padded) * response, n)
    return SampledSignal(x.t0, x.dt, y, meta={"mode": "spectral", "padded_length": n})
