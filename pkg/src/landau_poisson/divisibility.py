"""Certified non-infinite-divisibility of P(lam, m).

Two certificates are available for ``m >= 1``.  When ``4 lam`` reaches a zero
``x_k`` of ``L_m`` the characteristic function vanishes at
``u_k = arccos(1 - x_k / (2 lam))``.  Otherwise (``lam < x_1 / 4``) the
lattice criterion applies: an infinitely divisible law with ``p_0 > 0`` has
``P'(z)/P(z) = sum r_k z^k`` with every ``r_k >= 0``, and here ``r_1`` is
negative.
"""

from __future__ import annotations

import enum
import json
import math
from dataclasses import dataclass, field
from typing import Any, Union

import numpy as np

from .dist import DistParams, pmf_range
from .errors import DomainError
from .specfun import (
    LaguerreZeros,
    PowerSeries,
    RealPolynomial,
    _log_derivative_terms,
    laguerre_zeros,
)

__all__ = [
    "Verdict",
    "PoissonCase",
    "CfVanishesAt",
    "NegativeLogCoeff",
    "DivisibilityReport",
    "NEGATIVITY_THRESHOLD",
    "vanishing_points",
    "log_deriv_coeffs",
    "r0_closed_form",
    "r1_closed_form",
    "logderiv_rational",
    "r_polynomial",
    "theorem_verdict",
    "bound_check",
]

NEGATIVITY_THRESHOLD = -1e-9


class Verdict(str, enum.Enum):
    INFINITELY_DIVISIBLE = "INFINITELY_DIVISIBLE"
    NOT_INFINITELY_DIVISIBLE = "NOT_INFINITELY_DIVISIBLE"
    UNDECIDED_BY_THEOREM = "UNDECIDED_BY_THEOREM"


@dataclass(frozen=True)
class PoissonCase:
    def to_dict(self) -> dict[str, Any]:
        return {"type": "PoissonCase"}


@dataclass(frozen=True)
class CfVanishesAt:
    points: tuple[float, ...]

    def to_dict(self) -> dict[str, Any]:
        return {"type": "CfVanishesAt", "points": list(self.points)}


@dataclass(frozen=True)
class NegativeLogCoeff:
    index: int
    value: float

    def to_dict(self) -> dict[str, Any]:
        return {"type": "NegativeLogCoeff", "index": self.index, "value": self.value}


Certificate = Union[PoissonCase, CfVanishesAt, NegativeLogCoeff, None]


@dataclass(frozen=True)
class DivisibilityReport:
    params: DistParams
    verdict: Verdict
    certificate: Certificate
    zeros: tuple[float, ...] = field(default=())
    scanned: int = 0
    r1_guard: float | None = None

    def to_dict(self) -> dict[str, Any]:
        return {
            "lambda": self.params.lam,
            "m": self.params.m,
            "verdict": self.verdict.value,
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
            "zeros": list(self.zeros),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _require_level(params: DistParams) -> LaguerreZeros:
    if params.m < 1:
        raise DomainError("this operation needs m >= 1")
    return laguerre_zeros(params.m)


def vanishing_points(params: DistParams) -> list[float]:
    """Frequencies in (0, pi] where the characteristic function vanishes.

    One point per zero ``x_k <= 4 lam``.  Computed as
    ``2 arcsin(sqrt(x_k / (4 lam)))``, the same angle as
    ``arccos(1 - x_k / (2 lam))`` without the cancellation near ``u = 0``.
    """
    zeros = _require_level(params)
    four_lam = 4.0 * params.lam
    return [2.0 * math.asin(math.sqrt(x / four_lam)) for x in zeros if x <= four_lam]


def _normalized_pmf(params: DistParams, n: int) -> np.ndarray:
    probs = pmf_range(params, n)
    return probs / probs[0]


def log_deriv_coeffs(params: DistParams, K: int = 64) -> PowerSeries:
    """Coefficients ``r_0..r_K`` of ``P'(z)/P(z)`` by series division of the
    pmf sequence.

    For very small ``lam`` the coefficients grow roughly like
    ``(x_m / lam)^k`` and may overflow to ``inf`` at high ``k``.
    """
    if not 0 <= K <= 64:
        raise DomainError("K must lie in 0..64")
    p = _normalized_pmf(params, K + 2)
    gen = _log_derivative_terms(tuple(p.tolist()))
    return PowerSeries(tuple(next(gen) for _ in range(K + 1)), K)


def r0_closed_form(params: DistParams) -> float:
    """``r_0 = (lam - m)^2 / lam``."""
    return (params.lam - params.m) ** 2 / params.lam


def r1_closed_form(params: DistParams) -> float:
    """``r_1 = -R(lam) / lam^2``, with ``R`` from :func:`r_polynomial`."""
    if params.m == 0:
        return 0.0
    poly, _ = r_polynomial(params.m)
    return -poly(params.lam) / params.lam ** 2


def logderiv_rational(params: DistParams, z: float) -> float:
    """``P'(z)/P(z)`` in partial-fraction form over the zeros of ``L_m``::

        lam + sum_k (x_k - 2 lam (1 - z)) / (z x_k + lam (1 - z)^2)

    Each term is the log-derivative of one factor ``z x_k + lam (1 - z)^2``
    of the polynomial part of the generating function.
    """
    if not 0.0 <= z < 1.0:
        raise DomainError("z must lie in [0, 1)")
    lam = params.lam
    if params.m == 0:
        return lam
    total = lam
    for x in laguerre_zeros(params.m):
        den = z * x + lam * (1.0 - z) ** 2
        if den == 0.0:
            raise DomainError(f"vanishing denominator at z={z!r}")
        total += (x - 2.0 * lam * (1.0 - z)) / den
    return total


def r_polynomial(m: int) -> tuple[RealPolynomial, tuple[float, float]]:
    """``R(lam) = 2m lam^2 - 4m^2 lam + m^2 (2m - 1)`` and its roots
    ``m -/+ sqrt(2m)/2``.  ``-R(lam)/lam^2`` is the coefficient ``r_1``.
    """
    if m < 1:
        raise DomainError("m must be >= 1")
    poly = RealPolynomial((m * m * (2 * m - 1), -4 * m * m, 2 * m))
    half = math.sqrt(2 * m) / 2.0
    return poly, (m - half, m + half)


def theorem_verdict(params: DistParams, K: int = 64) -> DivisibilityReport:
    """Decide infinite divisibility and attach a certificate.

    ``m = 0`` is Poisson and infinitely divisible.  For ``m >= 1`` a
    reachable zero of the characteristic function is preferred; failing
    that, ``r_0..r_K`` are scanned for the first value below
    :data:`NEGATIVITY_THRESHOLD`.  If none is found the verdict is
    ``UNDECIDED_BY_THEOREM``.
    """
    if K < 8:
        raise DomainError("K must be >= 8")
    if params.m == 0:
        return DivisibilityReport(params, Verdict.INFINITELY_DIVISIBLE, PoissonCase())
    zeros = laguerre_zeros(params.m).zeros
    points = vanishing_points(params)
    if points:
        return DivisibilityReport(params, Verdict.NOT_INFINITELY_DIVISIBLE,
                                  CfVanishesAt(tuple(points)), zeros,
                                  r1_guard=r1_closed_form(params))
    guard = r1_closed_form(params)
    p = _normalized_pmf(params, K + 2)
    gen = _log_derivative_terms(tuple(p.tolist()))
    for k in range(K + 1):
        rk = next(gen)
        if not math.isfinite(rk):
            break
        if rk < NEGATIVITY_THRESHOLD:
            return DivisibilityReport(params, Verdict.NOT_INFINITELY_DIVISIBLE,
                                      NegativeLogCoeff(k, rk), zeros, k + 1, guard)
    return DivisibilityReport(params, Verdict.UNDECIDED_BY_THEOREM, None, zeros,
                              K + 1, guard)


def bound_check(m: int) -> bool:
    """Check ``x_1/4 <= (3/4)/(2m + 1) < m - sqrt(2m)/2``."""
    if m < 1:
        raise DomainError("m must be >= 1")
    x1 = laguerre_zeros(m)[0]
    mid = 0.75 / (2 * m + 1)
    # x_1 = 1 attains the upper bound at m = 1
    return x1 / 4.0 <= mid * (1 + 4 * np.finfo(float).eps) and mid < m - math.sqrt(2 * m) / 2.0

