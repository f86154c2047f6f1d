"""Special-function kernel.

Laguerre polynomials (values, coefficients, zeros), Charlier polynomials,
reciprocal gamma at integers, the first zero of the Bessel function J0 and
truncated power-series arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

import numpy as np
from scipy.linalg import LinAlgError, eigvalsh_tridiagonal

from .errors import DomainError, NonConvergence

__all__ = [
    "RealPolynomial",
    "PowerSeries",
    "LaguerreZeros",
    "laguerre",
    "laguerre_coeffs",
    "laguerre_zeros",
    "charlier",
    "pochhammer_int",
    "recip_gamma_int",
    "bessel_j0",
    "bessel_j0_first_zero",
    "least_zero_bounds",
    "series_log_derivative",
    "series_from_log_derivative",
]


# ---------------------------------------------------------------------------
# Coefficient containers


@dataclass(frozen=True)
class RealPolynomial:
    """Real polynomial stored by ascending powers.

    ``coeffs[k]`` is the coefficient of ``x**k``.  Trailing zeros are
    stripped on construction, so the zero polynomial is ``(0.0,)``.
    """

    coeffs: tuple[float, ...]

    def __post_init__(self):
        c = [float(a) for a in self.coeffs]
        while len(c) > 1 and c[-1] == 0.0:
            c.pop()
        if not c:
            c = [0.0]
        object.__setattr__(self, "coeffs", tuple(c))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x):
        acc = 0.0
        for a in reversed(self.coeffs):
            acc = acc * x + a
        return acc

    def derivative(self) -> "RealPolynomial":
        if self.degree == 0:
            return RealPolynomial((0.0,))
        return RealPolynomial(tuple(k * a for k, a in enumerate(self.coeffs) if k))


@dataclass(frozen=True)
class PowerSeries:
    """Power series truncated after the ``z**order`` term."""

    coeffs: tuple[float, ...]
    order: int

    def __post_init__(self):
        c = tuple(float(a) for a in self.coeffs)
        if self.order < 0:
            raise DomainError("order must be nonnegative")
        if len(c) < self.order + 1:
            c = c + (0.0,) * (self.order + 1 - len(c))
        object.__setattr__(self, "coeffs", c[: self.order + 1])

    @classmethod
    def from_coeffs(cls, coeffs: Sequence[float]) -> "PowerSeries":
        return cls(tuple(coeffs), len(coeffs) - 1)

    def __call__(self, z):
        acc = 0.0
        for a in reversed(self.coeffs):
            acc = acc * z + a
        return acc

    def __add__(self, other: "PowerSeries") -> "PowerSeries":
        k = min(self.order, other.order)
        return PowerSeries(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)), k)

    def __mul__(self, other: "PowerSeries") -> "PowerSeries":
        k = min(self.order, other.order)
        a, b = self.coeffs, other.coeffs
        out = [math.fsum(a[i] * b[n - i] for i in range(n + 1)) for n in range(k + 1)]
        return PowerSeries(tuple(out), k)

    def truncate(self, order: int) -> "PowerSeries":
        return PowerSeries(self.coeffs, min(order, self.order))


@dataclass(frozen=True)
class LaguerreZeros:
    """Zeros of ``L_m`` in increasing order."""

    m: int
    zeros: tuple[float, ...]

    def __len__(self):
        return len(self.zeros)

    def __getitem__(self, k):
        return self.zeros[k]

    def __iter__(self):
        return iter(self.zeros)


# ---------------------------------------------------------------------------
# Laguerre polynomials


def laguerre(n, alpha, x):
    """Generalized Laguerre polynomial ``L_n^(alpha)(x)``.

    Evaluated by the forward three-term recurrence in the degree::

        (k + 1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}

    All three arguments broadcast against each other; ``n`` may be an
    integer array, in which case each element is picked off the recurrence
    at its own degree.  Scalars in give a Python float out.
    """
    n_arr = np.asarray(n)
    if np.any(n_arr < 0):
        raise DomainError("Laguerre degree must be nonnegative")
    scalar = np.ndim(n) == 0 and np.ndim(alpha) == 0 and np.ndim(x) == 0
    n_arr, a, x = np.broadcast_arrays(n_arr.astype(np.int64), np.asarray(alpha, float),
                                      np.asarray(x, float))
    prev = np.ones(x.shape)
    out = np.where(n_arr == 0, prev, 0.0)
    nmax = int(n_arr.max(initial=0))
    if nmax >= 1:
        cur = 1.0 + a - x
        out = np.where(n_arr == 1, cur, out)
        for k in range(1, nmax):
            prev, cur = cur, ((2 * k + 1 + a - x) * cur - (k + a) * prev) / (k + 1)
            out = np.where(n_arr == k + 1, cur, out)
    return float(out) if scalar else out


def laguerre_coeffs(n: int) -> RealPolynomial:
    """Monomial coefficients of ``L_n = L_n^(0)``: ``C(n, j) (-1)^j / j!``."""
    if n < 0:
        raise DomainError("Laguerre degree must be nonnegative")
    return RealPolynomial(tuple(
        float(Fraction((-1) ** j * math.comb(n, j), math.factorial(j)))
        for j in range(n + 1)
    ))


_RESCALE = 1e150


def _laguerre_scaled(n: int, x: float) -> tuple[float, float, float]:
    """Return ``(L_n(x), L_{n-1}(x), log_scale)`` with values divided by
    ``exp(log_scale)`` so that high degrees at large ``x`` do not overflow.
    """
    if n == 0:
        return 1.0, 0.0, 0.0
    prev, cur, log_scale = 1.0, 1.0 - x, 0.0
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 - x) * cur - k * prev) / (k + 1)
        if abs(cur) > _RESCALE:
            prev /= _RESCALE
            cur /= _RESCALE
            log_scale += math.log(_RESCALE)
    return cur, prev, log_scale


@lru_cache(maxsize=256)
def laguerre_zeros(m: int) -> LaguerreZeros:
    """Zeros of ``L_m^(0)``.

    Eigenvalues of the Jacobi matrix (diagonal ``1, 3, ..., 2m - 1``,
    off-diagonal ``1, ..., m - 1``), each polished by one Newton step.

    Raises
    ------
    DomainError
        If ``m`` is outside ``1..200``.
    NonConvergence
        If the eigensolver fails or a root fails its residual check.
    """
    if not 1 <= m <= 200:
        raise DomainError("laguerre_zeros supports 1 <= m <= 200")
    diag = 2.0 * np.arange(m) + 1.0
    off = np.arange(1.0, m)
    try:
        roots = eigvalsh_tridiagonal(diag, off).tolist()
    except LinAlgError as exc:
        raise NonConvergence(f"eigenvalues of the order-{m} Jacobi matrix: {exc}") from exc
    polished = []
    for r in roots:
        ln, lm1, _ = _laguerre_scaled(m, r)
        dl = m * (ln - lm1) / r
        if dl != 0.0:
            r -= ln / dl
        ln, lm1, log_scale = _laguerre_scaled(m, r)
        dl = m * (ln - lm1) / r
        floor = math.exp(-log_scale) if log_scale < 700 else 0.0
        if abs(ln) > 1e-10 * max(floor, abs(dl) * r):
            raise NonConvergence(f"root {r!r} of L_{m} failed the residual check")
        polished.append(r)
    polished.sort()
    if any(b <= a for a, b in zip(polished, polished[1:])) or polished[0] <= 0:
        raise NonConvergence(f"zeros of L_{m} are not simple and positive")
    return LaguerreZeros(m, tuple(polished))


def charlier(q: int, l: int, lam: float) -> float:
    """Charlier polynomial ``Q_q(l; lam) = q! L_q^(l - q)(lam)``."""
    if q < 0 or l < q:
        raise DomainError(f"charlier needs 0 <= q <= l, got q={q}, l={l}")
    return math.factorial(q) * laguerre(q, l - q, lam)


# ---------------------------------------------------------------------------
# Gamma family


def pochhammer_int(a: int, j: int) -> int:
    """Rising factorial ``(a)_j`` for integer ``a`` as an exact integer.

    For ``a = -m`` this vanishes identically once ``j > m``.
    """
    out = 1
    for i in range(j):
        out *= a + i
    return out


def recip_gamma_int(n: int) -> float:
    """``1 / Gamma(n)`` at an integer, taking the value 0 at the poles."""
    if n <= 0:
        return 0.0
    return 1.0 / math.factorial(n - 1)


# ---------------------------------------------------------------------------
# Bessel J0


def _j0_series(x: float) -> tuple[float, float]:
    # alternating series, adequate for |x| <= 4
    if x == 0.0:
        return 1.0, 0.0
    q = -(x * x) / 4.0
    term, j0 = 1.0, 1.0
    dj0 = 0.0
    k = 0
    while True:
        k += 1
        term *= q / (k * k)
        j0 += term
        dj0 += 2 * k * term / x
        if abs(term) < 1e-18:
            return j0, dj0


def bessel_j0(x: float) -> float:
    """Bessel ``J0(x)`` from its power series; only valid for ``|x| <= 4``."""
    if abs(x) > 4.0:
        raise DomainError("bessel_j0 is only implemented on |x| <= 4")
    return _j0_series(x)[0]


@lru_cache(maxsize=None)
def bessel_j0_first_zero() -> float:
    """Least positive zero of ``J0``, by Newton iteration bracketed in [2, 3]."""
    lo, hi = 2.0, 3.0
    x = 2.4
    for _ in range(50):
        f, df = _j0_series(x)
        if f > 0:
            lo = x
        else:
            hi = x
        step = f / df
        x_new = x - step
        if not lo < x_new < hi:
            x_new = 0.5 * (lo + hi)
        if abs(x_new - x) < 1e-16 * x:
            return x_new
        x = x_new
    return x


def least_zero_bounds(m: int) -> tuple[float, float]:
    """Bracket ``(lower, upper)`` for the least zero of ``L_m^(0)``.

    ``lower = (j0/2)^2 / (m + 1/2)`` with ``j0`` the first zero of ``J0``
    and ``upper = 3 / (2m + 1)``.
    """
    if m < 1:
        raise DomainError("m must be >= 1")
    j1 = bessel_j0_first_zero()
    return (j1 / 2.0) ** 2 / (m + 0.5), 3.0 / (2 * m + 1)


# ---------------------------------------------------------------------------
# Power series


def _log_derivative_terms(p: Sequence[float]) -> Iterator[float]:
    """Yield ``r_0, r_1, ...`` of ``P'/P`` where ``P = sum p_k z^k``.

    Uses ``(k + 1) p_{k+1} = sum_{i<=k} r_i p_{k-i}``; coefficients beyond
    ``len(p)`` are treated as zero.
    """
    p0 = p[0]
    r: list[float] = []
    n = len(p)
    k = 0
    while True:
        nxt = (k + 1) * p[k + 1] if k + 1 < n else 0.0
        acc = math.fsum(r[i] * p[k - i] for i in range(max(0, k - n + 1), k))
        rk = (nxt - acc) / p0
        r.append(rk)
        yield rk
        k += 1


def series_log_derivative(p: PowerSeries | Sequence[float], K: int) -> PowerSeries:
    """First ``K + 1`` coefficients of ``P'(z) / P(z)``.

    Raises
    ------
    DomainError
        If the constant coefficient is not strictly positive.
    """
    coeffs = p.coeffs if isinstance(p, PowerSeries) else tuple(float(a) for a in p)
    if not coeffs or not coeffs[0] > 0:
        raise DomainError("series_log_derivative needs p[0] > 0")
    gen = _log_derivative_terms(coeffs)
    return PowerSeries(tuple(next(gen) for _ in range(K + 1)), K)


def series_from_log_derivative(r: PowerSeries | Sequence[float], K: int) -> PowerSeries:
    """Inverse of :func:`series_log_derivative`: the series ``q`` with
    ``q_0 = 1`` and ``q'/q = sum r_k z^k``, truncated at order ``K``.
    """
    rc = r.coeffs if isinstance(r, PowerSeries) else tuple(float(a) for a in r)
    q = [1.0]
    for k in range(K):
        acc = math.fsum(rc[i] * q[k - i] for i in range(min(k + 1, len(rc))))
        q.append(acc / (k + 1))
    return PowerSeries(tuple(q), K)
