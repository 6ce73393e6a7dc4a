"""Dense linear-algebra kernel for small complex matrices.

Thin, contract-checked wrappers around numpy.linalg plus a seeded Haar
sampler.  Everything in here operates on plain complex ndarrays; callers
own the physical interpretation.
"""
from __future__ import annotations

import numpy as np

from .errors import DegenerateInputError, InvalidInputError

__all__ = [
    "frobenius",
    "is_hermitian",
    "is_unitary",
    "require_hermitian",
    "require_unitary",
    "hermitian_eig",
    "exp_i_hermitian",
    "svd",
    "polar_nearest_unitary",
    "haar_random_unitary",
]

# Frobenius tolerance for validating Hermiticity / unitarity of inputs.
CHECK_TOL = 1e-10


def frobenius(m: np.ndarray) -> float:
    """Frobenius norm of a matrix (or of a difference already formed)."""
    return float(np.linalg.norm(np.asarray(m)))


def _as_square(m: np.ndarray, name: str) -> np.ndarray:
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidInputError(f"{name} must be a square matrix, got shape {m.shape}")
    return m


def is_hermitian(h: np.ndarray, tol: float = CHECK_TOL) -> bool:
    h = np.asarray(h, dtype=complex)
    return h.ndim == 2 and h.shape[0] == h.shape[1] and frobenius(h - h.conj().T) <= tol


def is_unitary(u: np.ndarray, tol: float = CHECK_TOL) -> bool:
    u = np.asarray(u, dtype=complex)
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        return False
    return frobenius(u.conj().T @ u - np.eye(u.shape[0])) <= tol


def require_hermitian(h: np.ndarray, tol: float = CHECK_TOL, name: str = "matrix") -> np.ndarray:
    h = _as_square(h, name)
    dev = frobenius(h - h.conj().T)
    if dev > tol:
        raise InvalidInputError(f"{name} is not Hermitian: ||h - h^dag|| = {dev:.3e} > {tol:.1e}")
    return h


def require_unitary(u: np.ndarray, tol: float = CHECK_TOL, name: str = "matrix") -> np.ndarray:
    u = _as_square(u, name)
    dev = frobenius(u.conj().T @ u - np.eye(u.shape[0]))
    if dev > tol:
        raise InvalidInputError(f"{name} is not unitary: ||u^dag u - 1|| = {dev:.3e} > {tol:.1e}")
    return u


def hermitian_eig(h: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Eigendecomposition of a Hermitian matrix.

    Returns (w, q) with real eigenvalues w in ascending order and unitary q
    such that h = q @ diag(w) @ q^dag.  Raises InvalidInputError when the
    input deviates from Hermiticity beyond the check tolerance.
    """
    h = require_hermitian(h)
    w, q = np.linalg.eigh(h)
    return w, q


def exp_i_hermitian(h: np.ndarray) -> np.ndarray:
    """Unitary exp(i*h) of a Hermitian matrix via its eigendecomposition."""
    w, q = hermitian_eig(h)
    return (q * np.exp(1j * w)) @ q.conj().T


def svd(m: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Singular value decomposition m = u @ diag(s) @ vh, s descending."""
    m = np.asarray(m, dtype=complex)
    if m.ndim != 2:
        raise InvalidInputError(f"svd expects a matrix, got ndim={m.ndim}")
    return np.linalg.svd(m)


def polar_nearest_unitary(m: np.ndarray, rank_tol: float = 1e-12) -> np.ndarray:
    """Closest unitary to m in Frobenius norm (polar factor u @ vh).

    The nearest unitary is unique only for full-rank input, so a smallest
    singular value below rank_tol * largest raises DegenerateInputError.
    Fixed points: already-unitary input is returned unchanged up to
    floating rounding.
    """
    m = _as_square(m, "matrix")
    u, s, vh = np.linalg.svd(m)
    if s[0] == 0.0 or s[-1] <= rank_tol * s[0]:
        raise DegenerateInputError(
            f"polar projection undefined: singular values span [{s[-1]:.3e}, {s[0]:.3e}]"
        )
    return u @ vh


def haar_random_unitary(dim: int, seed: int | np.random.Generator) -> np.ndarray:
    """Haar-distributed random unitary of size dim x dim.

    Complex Ginibre matrix, QR factorization, then column k is rescaled by
    conj(r_kk)/|r_kk| to detach the sample from the QR phase convention.
    The seed is either an integer fed to numpy's default PCG64 generator or
    an existing Generator (useful for spawned streams).
    """
    if dim < 1:
        raise InvalidInputError(f"dim must be >= 1, got {dim}")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    return q * (d.conj() / np.abs(d))
