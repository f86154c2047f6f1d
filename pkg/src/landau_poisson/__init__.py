"""Photon-counting probability laws attached to Euclidean Landau levels.

``P(lam, m)`` generalizes Poisson(lam) (the case ``m = 0``).  The package
evaluates the law and its transforms, certifies that it is not infinitely
divisible for ``m >= 1``, and factors it as a Poisson law convolved with a
shift and a signed atomic measure.
"""

__version__ = "0.1.0"

from .errors import (
    DomainError,
    LandauPoissonError,
    NonConvergence,
    ReconstructionError,
    TruncationError,
)
from .dist import (
    DistParams,
    MomentSummary,
    PmfTable,
    Regime,
    cdf,
    cdf_charlier,
    char_fn,
    char_fn_series,
    coherent_overlap_pmf,
    mgf,
    moments,
    pgf,
    pmf,
    pmf_table,
    sample,
)
from .divisibility import DivisibilityReport, Verdict, theorem_verdict
from .decomp import (
    CosineCoeffs,
    SignedAtomicMeasure,
    convolve_reconstruct,
    gamma_coeffs,
    measure_decomposition,
)
