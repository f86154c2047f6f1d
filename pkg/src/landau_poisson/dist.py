"""The photon-counting law P(lam, m) of the m-th Landau level.

``P(lam, 0)`` is Poisson(lam).  For ``m >= 1`` the probability of ``j``
counts is

    p_j = (min! / max!) lam^|m - j| e^-lam (L_min^(|m - j|)(lam))^2

with ``min = min(m, j)`` and ``max = max(m, j)``.
"""

from __future__ import annotations

import cmath
import enum
import json
import math
from dataclasses import dataclass
from typing import Any

import numpy as np
from scipy.special import gammaln

from .errors import DomainError, TruncationError
from .rng import Xoshiro256StarStar
from .specfun import charlier, laguerre

__all__ = [
    "DistParams",
    "PmfTable",
    "Regime",
    "MomentSummary",
    "pmf",
    "pmf_range",
    "pmf_table",
    "cdf",
    "cdf_charlier",
    "char_fn",
    "char_fn_series",
    "mgf",
    "pgf",
    "moments",
    "sample",
    "bargmann_basis",
    "coherent_overlap_pmf",
]

SUPPORT_CAP = 10**6


@dataclass(frozen=True)
class DistParams:
    """Parameters of P(lam, m): mean photon number ``lam = |z|^2 > 0`` and
    Landau level ``m >= 0``."""

    lam: float
    m: int

    def __post_init__(self):
        lam = float(self.lam)
        if not (lam > 0 and math.isfinite(lam)):
            raise DomainError(f"lambda must be a positive finite real, got {self.lam!r}")
        if isinstance(self.m, bool) or int(self.m) != self.m or self.m < 0:
            raise DomainError(f"m must be a nonnegative integer, got {self.m!r}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "m", int(self.m))

    @property
    def mean(self) -> float:
        return self.lam + self.m

    @property
    def variance(self) -> float:
        return self.lam * (1 + 2 * self.m)

    def to_dict(self) -> dict[str, Any]:
        return {"lambda": self.lam, "m": self.m}


# ---------------------------------------------------------------------------
# pmf


def _log_prefactor(lam: float, m: int, j: np.ndarray) -> np.ndarray:
    lo = np.minimum(m, j)
    hi = np.maximum(m, j)
    return gammaln(lo + 1) - gammaln(hi + 1) + np.abs(m - j) * math.log(lam) - lam


def _laguerre_factor(lam: float, m: int, j: np.ndarray) -> np.ndarray:
    """``L_{min(m,j)}^(|m-j|)(lam)`` for each ``j``."""
    return laguerre(np.minimum(m, j), np.abs(m - j), lam)


def pmf_range(params: DistParams, stop: int, start: int = 0) -> np.ndarray:
    """Probabilities ``p_start, ..., p_{stop-1}`` as an array."""
    j = np.arange(start, stop, dtype=np.int64)
    if j.size == 0:
        return np.zeros(0)
    lag = _laguerre_factor(params.lam, params.m, j)
    with np.errstate(divide="ignore"):
        logp = _log_prefactor(params.lam, params.m, j) + 2.0 * np.log(np.abs(lag))
    return np.exp(logp)


def pmf(params: DistParams, j):
    """Probability of ``j`` counts; ``j`` may be an integer or an array."""
    j_arr = np.asarray(j)
    if np.any(j_arr < 0) or not np.issubdtype(j_arr.dtype, np.integer):
        raise DomainError("j must be a nonnegative integer")
    jj = j_arr.astype(np.int64).ravel()
    lag = _laguerre_factor(params.lam, params.m, jj)
    with np.errstate(divide="ignore"):
        out = np.exp(_log_prefactor(params.lam, params.m, jj) + 2.0 * np.log(np.abs(lag)))
    if j_arr.ndim == 0:
        return float(out[0])
    return out.reshape(j_arr.shape)


@dataclass(frozen=True, eq=False)
class PmfTable:
    """Probabilities ``p_0..p_J`` plus the mass left out, ``1 - sum(probs)``."""

    params: DistParams
    probs: np.ndarray
    tail_bound: float

    def __post_init__(self):
        probs = np.array(self.probs, dtype=float)
        probs.setflags(write=False)
        object.__setattr__(self, "probs", probs)

    def __len__(self):
        return len(self.probs)

    @property
    def jmax(self) -> int:
        return len(self.probs) - 1

    def to_dict(self) -> dict[str, Any]:
        return {"lambda": self.params.lam, "m": self.params.m,
                "probs": self.probs.tolist(), "tail_bound": self.tail_bound}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    def to_csv(self) -> str:
        lines = ["j,p_j"]
        lines += [f"{j},{p!r}" for j, p in enumerate(self.probs.tolist())]
        return "\n".join(lines) + "\n"


def support_bound(params: DistParams) -> int:
    """Where the truncation scan starts: ``ceil(mean + 12 sd) + 32``."""
    return math.ceil(params.mean + 12.0 * math.sqrt(params.variance)) + 32


def pmf_table(params: DistParams, mass_target: float = 1.0 - 1e-12) -> PmfTable:
    """Truncate the law at the smallest ``J`` whose accumulated mass reaches
    ``mass_target``.

    The scan first evaluates ``mean + 12 sd + 32`` terms and doubles from
    there.

    Raises
    ------
    TruncationError
        If ``J`` would exceed ``10**6``, or the target is finer than the
        accumulated sum can resolve.
    """
    if not 1.0 - 1e-3 <= mass_target < 1.0:
        raise DomainError("mass_target must lie in [1 - 1e-3, 1)")
    stop = support_bound(params)
    probs = pmf_range(params, stop)
    cum = np.cumsum(probs)
    while cum[-1] < mass_target:
        if stop > SUPPORT_CAP:
            raise TruncationError(f"support exceeds {SUPPORT_CAP} for {params}")
        new = pmf_range(params, 2 * stop, start=stop)
        if new.sum() == 0.0 and stop > params.mean:
            raise TruncationError(
                f"mass target {mass_target!r} unreachable in floating point "
                f"(accumulated {cum[-1]!r})")
        probs = np.concatenate([probs, new])
        cum = np.cumsum(probs)
        stop *= 2
    J = int(np.searchsorted(cum, mass_target, side="left"))
    if J > SUPPORT_CAP:
        raise TruncationError(f"support exceeds {SUPPORT_CAP} for {params}")
    return PmfTable(params, probs[: J + 1], max(0.0, 1.0 - float(cum[J])))


# ---------------------------------------------------------------------------
# cdf


def _support_limit(params: DistParams) -> int:
    # beyond mean + 12 sd + 32 the remaining mass is far below double resolution
    return 2 * support_bound(params)


def cdf(params: DistParams, x):
    """Distribution function ``F(x) = sum_{j <= floor(x)} p_j``."""
    x_arr = np.asarray(x, dtype=float)
    n = np.floor(x_arr)
    top = int(min(np.max(n, initial=-1.0), _support_limit(params)))
    if top < 0:
        cum = np.zeros(1)
    else:
        cum = np.cumsum(pmf_range(params, top + 1))
    idx = np.clip(n, -1, top).astype(np.int64)
    out = np.where(idx < 0, 0.0, cum[np.maximum(idx, 0)])
    return float(out) if out.ndim == 0 else out


def cdf_charlier(params: DistParams, x: float) -> float:
    """Distribution function through Charlier polynomials,

        F(x) = e^-lam / m! * sum_{j <= floor(x)} lam^|m - j| / j! * Q_min(max; lam)^2.
    """
    if x < 0:
        return 0.0
    lam, m = params.lam, params.m
    top = int(min(math.floor(x), _support_limit(params)))
    base = -lam - math.lgamma(m + 1)
    terms = []
    for j in range(top + 1):
        q = charlier(min(m, j), max(m, j), lam)
        if q == 0.0:
            continue
        terms.append(math.exp(base + abs(m - j) * math.log(lam) - math.lgamma(j + 1)
                              + 2.0 * math.log(abs(q))))
    return math.fsum(terms)


# ---------------------------------------------------------------------------
# transforms


def char_fn(params: DistParams, u):
    """Characteristic function ``E exp(iuX)``, closed form

        exp(lam (e^{iu} - 1)) e^{imu} L_m(2 lam (1 - cos u)).
    """
    u_arr = np.asarray(u, dtype=float)
    x = 4.0 * params.lam * np.sin(0.5 * u_arr) ** 2  # 2 lam (1 - cos u)
    phase = params.lam * np.sin(u_arr) + params.m * u_arr
    out = np.exp(-0.5 * x) * laguerre(params.m, 0, x) * np.exp(1j * phase)
    return complex(out) if out.ndim == 0 else out


def char_fn_series(params: DistParams, u, tol: float = 1e-13):
    """Characteristic function as the truncated sum ``sum_j e^{iju} p_j``.

    The omitted tail has modulus at most the table's ``tail_bound < tol``.
    """
    if tol < 1e-14:
        raise DomainError("tol must be >= 1e-14")
    table = pmf_table(params, 1.0 - min(tol, 1e-3))
    u_arr = np.asarray(u, dtype=float)
    j = np.arange(len(table))
    out = np.exp(1j * np.multiply.outer(u_arr, j)) @ table.probs
    return complex(out) if out.ndim == 0 else out


def mgf(params: DistParams, u: float) -> float:
    """Moment generating function ``E exp(uX)``,

        exp(lam (e^u - 1) + m u) L_m(2 lam (1 - cosh u)).

    Raises OverflowError when the value is not representable.
    """
    lam, m = params.lam, params.m
    lag = laguerre(m, 0, -4.0 * lam * math.sinh(0.5 * u) ** 2)
    val = math.exp(lam * math.expm1(u) + m * u) * lag
    if not math.isfinite(val):
        raise OverflowError(f"mgf overflows at u={u!r}")
    return val


def pgf(params: DistParams, z: float) -> float:
    """Probability generating function ``E z^X`` on [0, 1], from the expanded
    form ``e^{lam(z-1)} sum_j C(m,j) lam^j (1-z)^{2j} z^{m-j} / j!``.
    """
    if not 0.0 <= z <= 1.0:
        raise DomainError("pgf is defined here for z in [0, 1]")
    lam, m = params.lam, params.m
    terms = (math.comb(m, j) * lam ** j * (1.0 - z) ** (2 * j) * z ** (m - j)
             / math.factorial(j) for j in range(m + 1))
    return math.exp(lam * (z - 1.0)) * math.fsum(terms)


# ---------------------------------------------------------------------------
# moments


class Regime(str, enum.Enum):
    SUB_POISSONIAN = "SUB_POISSONIAN"
    POISSONIAN = "POISSONIAN"
    SUPER_POISSONIAN = "SUPER_POISSONIAN"


@dataclass(frozen=True)
class MomentSummary:
    mean: float
    variance: float
    fano: float
    regime: Regime

    def to_dict(self) -> dict[str, Any]:
        return {"mean": self.mean, "variance": self.variance,
                "fano": self.fano, "regime": self.regime.value}


def moments(params: DistParams) -> MomentSummary:
    """Mean ``lam + m``, variance ``lam (1 + 2m)`` and the Fano classification.

    For ``m >= 1`` the Fano factor is below one exactly when ``lam < 1/2``;
    the regime is decided on that comparison to avoid rounding at the
    boundary.
    """
    mean, var = params.mean, params.variance
    if params.m == 0 or params.lam == 0.5:
        regime = Regime.POISSONIAN
    elif params.lam < 0.5:
        regime = Regime.SUB_POISSONIAN
    else:
        regime = Regime.SUPER_POISSONIAN
    return MomentSummary(mean, var, var / mean, regime)


# ---------------------------------------------------------------------------
# sampling


def sample(params: DistParams, seed: int, n: int) -> np.ndarray:
    """``n`` i.i.d. draws by inverse-transform search.

    Uniforms come from :class:`~landau_poisson.rng.Xoshiro256StarStar`
    seeded with ``seed``; the search runs over ``pmf_table(params, 1 - 1e-12)``
    and a uniform falling in the omitted tail maps to the last tabulated
    count.
    """
    if not 1 <= n <= 10**8:
        raise DomainError("n must lie in 1..1e8")
    table = pmf_table(params, 1.0 - 1e-12)
    cum = np.cumsum(table.probs)
    u = Xoshiro256StarStar(seed).uniforms(n)
    idx = np.searchsorted(cum, u, side="right")
    return np.minimum(idx, table.jmax).astype(np.int64)


# ---------------------------------------------------------------------------
# coherent-state route


def bargmann_basis(m: int, j: int, z: complex) -> complex:
    """Basis function ``Phi_{m,j}(z)`` of the m-th generalized Bargmann space,

        (-1)^min min! |z|^|m-j| e^{-i(m-j) arg z} L_min^(|m-j|)(|z|^2).
    """
    lo, d = min(m, j), abs(m - j)
    r = abs(z)
    return ((-1) ** lo * math.factorial(lo) * r ** d
            * cmath.exp(-1j * (m - j) * cmath.phase(z)) * laguerre(lo, d, r * r))


def coherent_overlap_pmf(z: complex, m: int, j: int) -> float:
    """Photon-count probability as a coherent-state overlap,
    ``|Phi_{m,j}(z)|^2 / (rho_{m,j} N(z))`` with ``rho = pi m! j!`` and
    ``N = e^{|z|^2} / pi``.
    """
    z = complex(z)
    if z == 0:
        raise DomainError("z must be nonzero")
    phi = bargmann_basis(m, j, z)
    lam = abs(z) ** 2
    log_norms = math.log(math.pi) + math.lgamma(m + 1) + math.lgamma(j + 1) \
        + lam - math.log(math.pi)
    return abs(phi) ** 2 * math.exp(-log_norms)
