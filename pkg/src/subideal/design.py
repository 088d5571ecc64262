"""Filter families: identity-approximating and reference-matched sequences."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Literal, Sequence

import numpy as np

from .complex_core import DEFAULT_Q_BAR, FilterParams

__all__ = [
    "SequenceSpec",
    "matched_alpha",
    "gain_bound",
    "log_gain_bound",
    "make_identity_sequence",
    "make_matched_sequence",
]


def matched_alpha(mu: float, q: float) -> float:
    """Return ``mu / cos(q pi / 2)``.

    With this choice the envelope ``exp(-alpha cos(q pi/2) |w|**q)`` becomes
    ``exp(-mu |w|**q)``, which tends to the reference gain as ``q -> 1``.
    """
    if not 0 < q < 1:
        raise ValueError(f"q must lie in (0, 1), got {q}")
    if not mu > 0:
        raise ValueError(f"mu must be positive, got {mu}")
    return mu / math.cos(q * math.pi / 2)


def log_gain_bound(p: FilterParams, omega):
    """``-alpha cos(q pi/2) |omega|**q``, an upper bound on `log_gain`."""
    out = -p.decay_rate * np.abs(np.asarray(omega, dtype=np.float64)) ** p.q
    return float(out) if out.ndim == 0 else out


def gain_bound(p: FilterParams, omega):
    """Envelope ``exp(-alpha cos(q pi/2) |omega|**q)`` dominating ``|H(i omega)|``."""
    out = np.exp(np.asarray(log_gain_bound(p, omega)))
    return float(out) if out.ndim == 0 else out


def _check_q(q: float, q_bar: float) -> None:
    if not 0 < q_bar < 1:
        raise ValueError(f"q_bar must lie in (0, 1), got {q_bar}")
    if not q_bar <= q < 1:
        raise ValueError(f"q must lie in [{q_bar}, 1), got {q}")


def make_identity_sequence(
    q: float,
    beta: float,
    alphas: Sequence[float],
    q_bar: float = DEFAULT_Q_BAR,
) -> list[FilterParams]:
    """Filters with fixed ``(beta, q)`` and ``alpha`` decreasing to zero.

    Along such a sequence ``H(i omega) -> 1`` uniformly on bounded
    intervals, while every member keeps the envelope
    ``|H(i omega)| <= exp(-alpha cos(q pi/2) |omega|**q)``.
    """
    _check_q(q, q_bar)
    alphas = [float(a) for a in alphas]
    if not alphas:
        raise ValueError("alphas must be non-empty")
    if any(a <= 0 for a in alphas):
        raise ValueError("alphas must be positive")
    if any(b >= a for a, b in zip(alphas, alphas[1:])):
        raise ValueError("alphas must be strictly decreasing")
    return [FilterParams(a, beta, q) for a in alphas]


def make_matched_sequence(
    mu: float,
    qs: Sequence[float],
    beta: Callable[[float], float] | Sequence[float] | None = None,
    q_bar: float = DEFAULT_Q_BAR,
) -> list[FilterParams]:
    """Filters with ``q`` increasing to 1 and ``alpha = matched_alpha(mu, q)``.

    Parameters
    ----------
    mu : float
        Decay rate of the reference gain being matched.
    qs : sequence of float
        Strictly increasing exponents in ``(q_bar, 1)``.
    beta : callable or sequence, optional
        Shift for each element. A callable is applied to ``q``; a sequence
        must match `qs` in length. Default is ``1 - q``.

        Note that ``beta = 1 - q`` keeps ``alpha * beta`` near ``2 mu / pi``,
        so the low-frequency gain deficit does not vanish as ``q -> 1``.
        Use a faster schedule such as ``(1 - q)**2`` for L2 convergence to
        the reference gain.
    q_bar : float, optional
        Lower bound for admissible exponents.
    """
    qs = [float(q) for q in qs]
    if not qs:
        raise ValueError("qs must be non-empty")
    for q in qs:
        _check_q(q, q_bar)
        if q == q_bar:
            raise ValueError(f"q must exceed q_bar = {q_bar}")
    if any(b <= a for a, b in zip(qs, qs[1:])):
        raise ValueError("qs must be strictly increasing")
    if beta is None:
        betas = [1.0 - q for q in qs]
    elif callable(beta):
        betas = [float(beta(q)) for q in qs]
    else:
        betas = [float(b) for b in beta]
        if len(betas) != len(qs):
            raise ValueError("beta sequence must have the same length as qs")
    return [FilterParams(matched_alpha(mu, q), b, q) for q, b in zip(qs, betas)]


@dataclass(frozen=True)
class SequenceSpec:
    """Declarative description of a filter sequence.

    ``kind="identity_sequence"`` uses `q`, `beta` and `alphas`;
    ``kind="matched_sequence"`` uses `mu`, `qs` and optionally `betas`.
    """

    kind: Literal["identity_sequence", "matched_sequence"]
    q: float | None = None
    beta: float | None = None
    alphas: tuple[float, ...] = ()
    mu: float | None = None
    qs: tuple[float, ...] = ()
    betas: tuple[float, ...] | None = None
    q_bar: float = DEFAULT_Q_BAR

    def build(self) -> list[FilterParams]:
        if self.kind == "identity_sequence":
            if self.q is None or self.beta is None:
                raise ValueError("identity_sequence needs q and beta")
            return make_identity_sequence(self.q, self.beta, self.alphas, self.q_bar)
        if self.kind == "matched_sequence":
            if self.mu is None:
                raise ValueError("matched_sequence needs mu")
            return make_matched_sequence(self.mu, self.qs, self.betas, self.q_bar)
        raise ValueError(f"unknown sequence kind {self.kind!r}")
