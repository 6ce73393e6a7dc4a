"""Exception types shared across the package."""

__all__ = [
    "InvalidInputError",
    "DegenerateInputError",
    "ResourceLimitError",
    "LeakyGateError",
]


class InvalidInputError(ValueError):
    """Input violates a documented precondition (shape, symmetry, range)."""


class DegenerateInputError(ValueError):
    """Input is numerically rank-deficient where a full-rank matrix is required."""


class ResourceLimitError(RuntimeError):
    """Requested computation exceeds a hard size cap."""


class LeakyGateError(RuntimeError):
    """Gate couples the computational subspace to bunched states beyond tolerance."""
