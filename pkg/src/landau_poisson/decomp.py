"""Cosine expansion of ``L_m(2 lam (1 - cos u))`` and the factorization

    P(lam, m) = Poisson(lam) * delta_m * nu

where ``nu`` is the signed measure on ``{-m, ..., m}`` whose Fourier
transform is that cosine polynomial.

Coefficients are stored normalized: ``c[0]`` is the constant term of the
cosine polynomial and ``c[k]`` (``k >= 1``) multiplies ``cos(ku)``, so that
``nu({0}) = c[0]`` and ``nu({-k}) = nu({k}) = c[k] / 2``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Any, Mapping

import numpy as np

from .dist import DistParams, PmfTable, char_fn, pmf_range
from .errors import DomainError, ReconstructionError
from .specfun import laguerre, pochhammer_int

__all__ = [
    "SignedAtomicMeasure",
    "CosineCoeffs",
    "RECONSTRUCTION_TOL",
    "gamma_coeff_polynomials",
    "gamma_coeffs",
    "gamma_coeffs_exact",
    "gamma_coeffs_quadrature",
    "cosine_reconstruction",
    "measure_decomposition",
    "convolve_reconstruct",
]

RECONSTRUCTION_TOL = 1e-10


@dataclass(frozen=True)
class SignedAtomicMeasure:
    """Finitely supported signed measure on the integers."""

    atoms: Mapping[int, float]

    def __post_init__(self):
        object.__setattr__(self, "atoms",
                           {int(k): float(w) for k, w in sorted(self.atoms.items())})

    def total_mass(self) -> float:
        return math.fsum(self.atoms.values())

    def total_variation(self) -> float:
        return math.fsum(abs(w) for w in self.atoms.values())

    @property
    def support(self) -> list[int]:
        return list(self.atoms)

    def fourier(self, u):
        """``sum_k w_k e^{iku}``."""
        u_arr = np.asarray(u, dtype=float)
        out = sum(w * np.exp(1j * k * u_arr) for k, w in self.atoms.items())
        return complex(out) if np.ndim(out) == 0 else out

    def to_dict(self) -> dict[str, Any]:
        return {"atoms": {str(k): w for k, w in self.atoms.items()}}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


@dataclass(frozen=True)
class CosineCoeffs:
    """``L_m(2 lam (1 - cos u)) = c[0] + sum_{k>=1} c[k] cos(ku)``."""

    m: int
    lam: float
    c: tuple[float, ...]

    def __call__(self, u):
        u_arr = np.asarray(u, dtype=float)
        out = sum(ck * np.cos(k * u_arr) for k, ck in enumerate(self.c))
        return float(out) if np.ndim(out) == 0 else out

    def to_dict(self) -> dict[str, Any]:
        return {"m": self.m, "lambda": self.lam, "c": list(self.c)}

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


# ---------------------------------------------------------------------------
# closed form


@lru_cache(maxsize=128)
def gamma_coeff_polynomials(m: int) -> tuple[tuple[Fraction, ...], ...]:
    """Exact polynomial coefficients of each ``c[k]`` in ``lam``.

    Row ``k`` holds ``a_{k,0..m}`` with ``c[k](lam) = sum_j a_{k,j} lam^j``,
    where for ``j >= k``

        a_{k,j} = 2 (-1)^k (-m)_j (1/2)_j 4^j / (Gamma(1+k+j) Gamma(1-k+j) j!)

    halved for ``k = 0``.  Entries with ``j < k`` vanish because
    ``1/Gamma(1-k+j) = 0`` there.
    """
    if m < 0:
        raise DomainError("m must be nonnegative")
    half_poch = [Fraction(1)]
    for j in range(m):
        half_poch.append(half_poch[-1] * (Fraction(1, 2) + j))
    rows = []
    for k in range(m + 1):
        row = [Fraction(0)] * (m + 1)
        for j in range(k, m + 1):
            num = 2 * (-1) ** k * pochhammer_int(-m, j) * half_poch[j] * 4 ** j
            den = math.factorial(k + j) * math.factorial(j - k) * math.factorial(j)
            row[j] = num / den
        if k == 0:
            row = [a / 2 for a in row]
        rows.append(tuple(row))
    return tuple(rows)


def gamma_coeffs_exact(params: DistParams) -> tuple[Fraction, ...]:
    """The coefficients ``c[0..m]`` as exact rationals at the binary value of
    ``lam``."""
    lam = Fraction(params.lam)
    out = []
    for row in gamma_coeff_polynomials(params.m):
        acc = Fraction(0)
        for a in reversed(row):
            acc = acc * lam + a
        out.append(acc)
    return tuple(out)


def gamma_coeffs(params: DistParams) -> CosineCoeffs:
    """Cosine coefficients from the finite hypergeometric sum, each correctly
    rounded from its exact rational value."""
    return CosineCoeffs(params.m, params.lam,
                        tuple(float(c) for c in gamma_coeffs_exact(params)))


def gamma_coeffs_quadrature(params: DistParams, N: int = 1024,
                            kmax: int | None = None) -> CosineCoeffs:
    """Cosine coefficients by the periodic trapezoid rule on ``N`` nodes.

    The integrand is a trigonometric polynomial of degree ``m``, so the rule
    is exact (up to rounding) once ``N > 2m``.  ``kmax`` defaults to
    ``m + 1``; the extra coefficient should vanish.
    """
    if N < 256 or N & (N - 1):
        raise DomainError("N must be a power of two >= 256")
    kmax = params.m + 1 if kmax is None else kmax
    u = 2.0 * np.pi * np.arange(N) / N
    vals = laguerre(params.m, 0, 4.0 * params.lam * np.sin(0.5 * u) ** 2)
    c = []
    for k in range(kmax + 1):
        w = 1.0 if k == 0 else 2.0
        c.append(w * math.fsum((np.cos(k * u) * vals).tolist()) / N)
    return CosineCoeffs(params.m, params.lam, tuple(c))


def cosine_reconstruction(params: DistParams, u):
    """``sum_k c[k] cos(ku)`` with the closed-form coefficients."""
    return gamma_coeffs(params)(u)


# ---------------------------------------------------------------------------
# the three-factor decomposition


def _nu_atoms(c) -> dict[int, Any]:
    atoms = {0: c[0]}
    for k in range(1, len(c)):
        atoms[k] = c[k] / 2
        atoms[-k] = c[k] / 2
    return atoms


def measure_decomposition(params: DistParams) -> tuple[DistParams, int, SignedAtomicMeasure]:
    """Return ``(Poisson(lam) as P(lam, 0), shift m, nu)``."""
    c = gamma_coeffs(params).c
    return DistParams(params.lam, 0), params.m, SignedAtomicMeasure(_nu_atoms(c))


def convolve_reconstruct(params: DistParams, J: int | None = None) -> PmfTable:
    """Rebuild ``p_0..p_J`` as ``Poisson(lam) * delta_m * nu``.

    ``q_j = sum_k nu({k}) e^-lam lam^n / n!`` with ``n = j - m - k``.  The
    atoms of ``nu`` grow like the sup of ``|L_m|`` on ``[0, 4 lam]`` and
    cancel almost completely, so the sum is carried out in exact rational
    arithmetic and multiplied by ``e^-lam`` once at the end.

    Raises
    ------
    ReconstructionError
        If some ``|q_j - p_j|`` reaches :data:`RECONSTRUCTION_TOL`.
    """
    m = params.m
    if J is None:
        J = math.ceil(params.mean + 10.0 * math.sqrt(params.variance))
    if J < params.mean + 10.0 * math.sqrt(params.variance):
        raise DomainError("J must be at least mean + 10 sd")
    nu = _nu_atoms(gamma_coeffs_exact(params))
    lam = Fraction(params.lam)
    # poisson_terms[n] = lam^n / n!
    poisson_terms = [Fraction(1)]
    for n in range(1, J + m + 1):
        poisson_terms.append(poisson_terms[-1] * lam / n)
    damp = math.exp(-params.lam)
    q = []
    for j in range(J + 1):
        acc = Fraction(0)
        for k, w in nu.items():
            n = j - m - k
            if n >= 0:
                acc += w * poisson_terms[n]
        q.append(float(acc) * damp)
    q_arr = np.array(q)
    err = float(np.max(np.abs(q_arr - pmf_range(params, J + 1))))
    if not err < RECONSTRUCTION_TOL:
        raise ReconstructionError(
            f"convolution misses the pmf by {err:.3e} at {params}")
    return PmfTable(params, q_arr, max(0.0, 1.0 - math.fsum(q)))


def factor_char_fn(params: DistParams, u):
    """Product of the three factor transforms; equals :func:`char_fn`."""
    poisson, shift, nu = measure_decomposition(params)
    u_arr = np.asarray(u, dtype=float)
    return char_fn(poisson, u_arr) * np.exp(1j * shift * u_arr) * nu.fourier(u_arr)
