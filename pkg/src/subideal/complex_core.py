"""Principal-branch arithmetic and pointwise transfer functions.

The causal family is ``H(s) = exp(-alpha * (s + beta)**q)`` on the closed
right half-plane, with ``(s + beta)**q`` taken on the principal branch.
The non-causal benchmark is ``M(i*omega) = exp(-mu * |omega|)``.

All functions accept Python scalars or numpy arrays.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.typing import ArrayLike

__all__ = [
    "DEFAULT_Q_BAR",
    "LOG_TINY",
    "DomainError",
    "FilterParams",
    "ReferenceParams",
    "principal_arg",
    "principal_pow",
    "transfer_eval",
    "log_gain",
    "phase",
    "reference_gain",
    "reference_log_gain",
]

#: Lower bound on ``q`` used by the sequence constructors.
DEFAULT_Q_BAR = 0.5

#: Log of the smallest normal float64; gains below this are flushed to 0.
LOG_TINY = math.log(np.finfo(np.float64).tiny)


class DomainError(ValueError):
    """Argument outside the domain of a principal-branch operation."""


@dataclass(frozen=True)
class FilterParams:
    """Parameters ``(alpha, beta, q)`` of one sub-ideal filter."""

    alpha: float
    beta: float
    q: float

    def __post_init__(self):
        for name in ("alpha", "beta", "q"):
            value = getattr(self, name)
            if not isinstance(value, (int, float, np.floating, np.integer)) or not math.isfinite(value):
                raise ValueError(f"{name} must be a finite real number, got {value!r}")
            object.__setattr__(self, name, float(value))
        if self.alpha <= 0:
            raise ValueError(f"alpha must be positive, got {self.alpha}")
        if self.beta <= 0:
            raise ValueError(f"beta must be positive, got {self.beta}")
        if not 0 < self.q < 1:
            raise ValueError(f"q must lie in (0, 1), got {self.q}")

    @property
    def decay_rate(self) -> float:
        """Constant ``c`` in the envelope ``|H(i w)| <= exp(-c |w|**q)``."""
        return self.alpha * math.cos(self.q * math.pi / 2)

    @property
    def decay_power(self) -> float:
        return self.q

    def log_gain(self, omega):
        return log_gain(self, omega)

    def gain(self, omega):
        return np.exp(log_gain(self, omega))

    def as_dict(self) -> dict:
        return {"alpha": self.alpha, "beta": self.beta, "q": self.q}


@dataclass(frozen=True)
class ReferenceParams:
    """Decay rate ``mu`` of the reference gain ``exp(-mu |omega|)``."""

    mu: float

    def __post_init__(self):
        if not isinstance(self.mu, (int, float, np.floating, np.integer)) or not math.isfinite(self.mu):
            raise ValueError(f"mu must be a finite real number, got {self.mu!r}")
        object.__setattr__(self, "mu", float(self.mu))
        if self.mu <= 0:
            raise ValueError(f"mu must be positive, got {self.mu}")

    @property
    def decay_rate(self) -> float:
        return self.mu

    @property
    def decay_power(self) -> float:
        return 1.0

    def log_gain(self, omega):
        return reference_log_gain(self, omega)

    def gain(self, omega):
        return reference_gain(self, omega)

    def as_dict(self) -> dict:
        return {"mu": self.mu}


def principal_arg(z: ArrayLike):
    """Principal argument in ``(-pi, pi]``.

    Raises
    ------
    DomainError
        If any element of `z` is zero.
    """
    z = np.asarray(z, dtype=np.complex128)
    if np.any(z == 0):
        raise DomainError("principal argument is undefined at z = 0")
    arg = np.arctan2(z.imag, z.real)
    # atan2(-0.0, x<0) gives -pi; the principal value on the cut is +pi
    arg = np.where((arg == -np.pi) & (z.imag == 0), np.pi, arg)
    return float(arg) if arg.ndim == 0 else arg


def principal_pow(z: ArrayLike, q: float):
    """``|z|**q * exp(i q Arg z)`` with the principal argument."""
    if not 0 < q <= 1:
        raise DomainError(f"exponent must lie in (0, 1], got {q}")
    z = np.asarray(z, dtype=np.complex128)
    arg = np.asarray(principal_arg(z))
    mag = np.abs(z) ** q
    out = mag * np.cos(q * arg) + 1j * (mag * np.sin(q * arg))
    return complex(out) if out.ndim == 0 else out


def transfer_eval(p: FilterParams, s: ArrayLike):
    """Evaluate ``exp(-alpha (s + beta)**q)`` for ``Re s >= 0``.

    Values whose log-magnitude falls below `LOG_TINY` are returned as exact
    zeros; query `log_gain` for the magnitude in that regime.
    """
    s = np.asarray(s, dtype=np.complex128)
    if np.any(s.real < 0) or not np.all(np.isfinite(s)):
        raise DomainError("transfer function is evaluated on the closed right half-plane only")
    w = np.asarray(principal_pow(s + p.beta, p.q))
    log_mag = -p.alpha * w.real
    ph = -p.alpha * w.imag
    mag = np.where(log_mag < LOG_TINY, 0.0, np.exp(np.maximum(log_mag, LOG_TINY)))
    out = mag * np.cos(ph) + 1j * (mag * np.sin(ph))
    return complex(out) if out.ndim == 0 else out


def log_gain(p: FilterParams, omega: ArrayLike):
    """``ln |H(i omega)| = -alpha |i omega + beta|**q cos(q Arg(i omega + beta))``."""
    omega = np.asarray(omega, dtype=np.float64)
    out = -p.alpha * np.hypot(p.beta, omega) ** p.q * np.cos(p.q * np.arctan2(omega, p.beta))
    return float(out) if out.ndim == 0 else out


def phase(p: FilterParams, omega: ArrayLike):
    """Continuous (unwrapped) phase ``-alpha Im((i omega + beta)**q)`` in radians."""
    omega = np.asarray(omega, dtype=np.float64)
    out = -p.alpha * np.hypot(p.beta, omega) ** p.q * np.sin(p.q * np.arctan2(omega, p.beta))
    return float(out) if out.ndim == 0 else out


def reference_log_gain(r: ReferenceParams, omega: ArrayLike):
    omega = np.asarray(omega, dtype=np.float64)
    out = -r.mu * np.abs(omega)
    return float(out) if out.ndim == 0 else out


def reference_gain(r: ReferenceParams, omega: ArrayLike):
    """Reference gain ``exp(-mu |omega|)``."""
    out = np.exp(np.asarray(reference_log_gain(r, omega)))
    return float(out) if out.ndim == 0 else out
