"""Adaptive quadrature over the half-line with closed-form tails.

Integrands in this package decay like ``exp(-c w**p)`` with ``0 < p <= 1``.
Finite pieces are integrated by QUADPACK (``scipy.integrate.quad``) on
geometric segments; the remainder beyond a switch point is bounded or
integrated in closed form through the upper incomplete gamma function.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np
from scipy import integrate, special

__all__ = [
    "QuadratureConfig",
    "QuadratureError",
    "DEFAULT_QUADRATURE",
    "integrate_segments",
    "integrate_log",
    "log_stretched_exp_tail",
    "geometric_edges",
]


class QuadratureError(RuntimeError):
    """Adaptive quadrature did not reach the requested tolerance."""


@dataclass(frozen=True)
class QuadratureConfig:
    """Tolerances and limits shared by the verification integrals.

    `closed_form_tail` selects the analytic tail treatment; when False the
    tail beyond the switch point is integrated numerically to infinity.
    """

    abs_tol: float = 1e-13
    rel_tol: float = 1e-10
    max_subdivisions: int = 200
    closed_form_tail: bool = True
    max_truncation: float = 2.0**40
    divergence_window: int = 4

    def __post_init__(self):
        if not (0 < self.abs_tol < 1 and 0 < self.rel_tol < 1):
            raise ValueError("tolerances must lie in (0, 1)")
        if self.max_subdivisions < 16:
            raise ValueError("max_subdivisions must be at least 16")
        if self.divergence_window < 2:
            raise ValueError("divergence_window must be at least 2")

    def as_dict(self) -> dict:
        return {
            "abs_tol": self.abs_tol,
            "rel_tol": self.rel_tol,
            "max_subdivisions": self.max_subdivisions,
            "closed_form_tail": self.closed_form_tail,
            "max_truncation": self.max_truncation,
            "divergence_window": self.divergence_window,
        }


DEFAULT_QUADRATURE = QuadratureConfig()


def geometric_edges(start: float, stop: float, per_decade: int = 2) -> list[float]:
    """``0`` followed by geometrically spaced points from `start` to `stop`."""
    if stop <= start:
        return [0.0, stop]
    count = max(1, math.ceil(per_decade * math.log10(stop / start)))
    return [0.0] + list(np.geomspace(start, stop, count + 1))


def _quad(
    f: Callable[[float], float], a: float, b: float, qc: QuadratureConfig, epsabs: float, epsrel: float | None = None
):
    epsrel = qc.rel_tol if epsrel is None else epsrel
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            value, err = integrate.quad(f, a, b, epsabs=epsabs, epsrel=epsrel, limit=qc.max_subdivisions)
        except integrate.IntegrationWarning as exc:
            raise QuadratureError(f"quadrature on [{a}, {b}] failed: {exc}") from None
    return value, err


def integrate_segments(
    f: Callable[[float], float], edges: Sequence[float], qc: QuadratureConfig = DEFAULT_QUADRATURE
) -> float:
    """Sum of adaptive integrals of `f` over consecutive `edges`."""
    pieces = max(1, len(edges) - 1)
    total = 0.0
    for a, b in zip(edges[:-1], edges[1:]):
        if b > a:
            total += _quad(f, a, b, qc, qc.abs_tol / pieces)[0]
    return total


def integrate_log(
    log_f: Callable[[np.ndarray], np.ndarray], a: float, b: float, qc: QuadratureConfig = DEFAULT_QUADRATURE
) -> float:
    """``log int_a^b exp(log_f(w)) dw`` without overflow.

    ``[a, b]`` is bisected until `log_f` varies by at most `_LOG_SPAN` on
    each piece; every piece is rescaled by its sampled maximum before
    integration and the pieces are combined with log-sum-exp. Pieces whose
    bound ``(b - a) exp(max)`` lies ``_PRUNE`` below the running total are
    dropped, the half holding the sampled maximum being visited first.
    The relative tolerance is relaxed to the rounding level of the
    exponent when that exceeds ``rel_tol``.
    """
    return _log_piece(log_f, a, b, qc, 0, -math.inf)


_LOG_SPAN = 30.0
_PRUNE = 50.0
_MAX_DEPTH = 80


def _log_piece(log_f, a: float, b: float, qc: QuadratureConfig, depth: int, floor: float) -> float:
    probe = np.linspace(a, b, 33)
    values = log_f(probe)
    k = int(np.argmax(values))
    shift = float(values[k])
    if shift + math.log(b - a) < floor - _PRUNE:
        return -math.inf
    if shift - float(np.min(values)) > _LOG_SPAN and depth < _MAX_DEPTH:
        mid = 0.5 * (a + b)
        halves = [(a, mid), (mid, b)]
        if probe[k] > mid:
            halves.reverse()
        first = _log_piece(log_f, *halves[0], qc, depth + 1, floor)
        second = _log_piece(log_f, *halves[1], qc, depth + 1, max(floor, first))
        return float(np.logaddexp(first, second))

    def scaled(w):
        return math.exp(float(log_f(np.float64(w))) - shift)

    # rounding of a large exponent limits the attainable relative accuracy
    epsrel = max(qc.rel_tol, 64 * np.finfo(np.float64).eps * abs(shift))
    try:
        value, _ = _quad(scaled, a, b, qc, 0.0, epsrel)
    except QuadratureError:
        if depth >= _MAX_DEPTH:
            raise
        mid = 0.5 * (a + b)
        first = _log_piece(log_f, a, mid, qc, depth + 1, floor)
        second = _log_piece(log_f, mid, b, qc, depth + 1, max(floor, first))
        return float(np.logaddexp(first, second))
    if value <= 0:
        return -math.inf
    return shift + math.log(value)


def log_stretched_exp_tail(c: float, power: float, start: float) -> float:
    """``log int_start^inf exp(-c w**power) dw`` for ``c > 0, 0 < power <= 1``.

    Equals ``log(c**(-1/p) / p * Gamma(1/p, c start**p))``. When the
    regularised incomplete gamma underflows, the bound
    ``Gamma(a, x) <= x**(a-1) exp(-x) x / (x - a + 1)`` (``a >= 1``,
    ``x > a - 1``) is used, so the result is never an underestimate.
    """
    if c <= 0 or not 0 < power <= 1:
        raise ValueError("need c > 0 and 0 < power <= 1")
    a = 1.0 / power
    x = c * start**power
    prefactor = -a * math.log(c) - math.log(power)
    reg = special.gammaincc(a, x)
    if reg > 1e-280:
        return prefactor + math.log(reg) + special.gammaln(a)
    if x <= a - 1:
        return prefactor + special.gammaln(a)
    return prefactor + (a - 1) * math.log(x) - x + math.log(x / (x - a + 1))
