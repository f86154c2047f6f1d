"""Exception types raised by the library."""


class LandauPoissonError(Exception):
    """Base class for all library errors."""


class DomainError(LandauPoissonError, ValueError):
    """An argument lies outside the domain of the operation."""


class TruncationError(LandauPoissonError, RuntimeError):
    """A probability table could not be truncated within the support cap."""


class NonConvergence(LandauPoissonError, RuntimeError):
    """An iterative kernel failed to converge."""


class ReconstructionError(LandauPoissonError, RuntimeError):
    """A decomposition failed to reproduce the law it decomposes."""
