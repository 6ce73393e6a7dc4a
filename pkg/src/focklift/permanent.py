"""Matrix permanent kernels.

Two deliberately independent routes:

* ``naive``   - literal sum over all n! permutations, the definitional
  oracle.  Capped at n <= 9.
* ``ryser``   - Ryser's inclusion-exclusion formula walked in Gray-code
  order, O(2^n * n).  Capped at n <= 24.

The Ryser walk is JIT-compiled with numba when available and falls back to
the same algorithm in pure Python otherwise.
"""
from __future__ import annotations

import itertools

import numpy as np

from .errors import InvalidInputError, ResourceLimitError

__all__ = ["permanent", "NAIVE_MAX_N", "RYSER_MAX_N"]

NAIVE_MAX_N = 9
RYSER_MAX_N = 24

try:  # pragma: no cover - exercised implicitly by every permanent call
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

    def njit(*args, **kwargs):  # type: ignore[misc]
        def wrap(f):
            return f

        return wrap


@njit(cache=True)
def _ryser_gray(mat):  # pragma: no cover - compiled
    """Ryser permanent with Gray-code subset updates.

    Per(A) = (-1)^n * sum_{S nonempty} (-1)^|S| prod_i sum_{j in S} a_ij,
    where consecutive subsets differ by one column, so each step costs one
    column update plus one row product.
    """
    n = mat.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    row_sums = np.zeros(n, dtype=np.complex128)
    total = 0.0 + 0.0j
    card = 0
    for k in range(1, 1 << n):
        j = 0
        while not (k >> j) & 1:
            j += 1
        gray = k ^ (k >> 1)
        if (gray >> j) & 1:
            for i in range(n):
                row_sums[i] += mat[i, j]
            card += 1
        else:
            for i in range(n):
                row_sums[i] -= mat[i, j]
            card -= 1
        prod = 1.0 + 0.0j
        for i in range(n):
            prod *= row_sums[i]
        if (n - card) & 1:
            total -= prod
        else:
            total += prod
    return total


# Cached permutation index tables for the naive kernel, keyed by n.
_PERM_TABLES: dict[int, np.ndarray] = {}


def _naive(mat: np.ndarray) -> complex:
    n = mat.shape[0]
    if n == 0:
        return 1.0 + 0.0j
    perms = _PERM_TABLES.get(n)
    if perms is None:
        perms = np.array(list(itertools.permutations(range(n))), dtype=np.intp)
        _PERM_TABLES[n] = perms
    rows = np.arange(n)
    return complex(mat[rows, perms].prod(axis=1).sum())


def permanent(mat: np.ndarray, algorithm: str = "ryser") -> complex:
    """Permanent of a square complex matrix.

    Parameters
    ----------
    mat : (n, n) array_like
        Square matrix; the empty 0 x 0 matrix has permanent 1.
    algorithm : {"ryser", "naive"}
        Kernel choice.  Both agree to floating rounding; "naive" exists as
        the independent definitional oracle.
    """
    mat = np.asarray(mat, dtype=complex)
    if mat.ndim != 2 or mat.shape[0] != mat.shape[1]:
        raise InvalidInputError(f"permanent expects a square matrix, got shape {mat.shape}")
    n = mat.shape[0]
    if algorithm == "naive":
        if n > NAIVE_MAX_N:
            raise ResourceLimitError(f"naive permanent capped at n <= {NAIVE_MAX_N}, got n = {n}")
        return _naive(mat)
    if algorithm == "ryser":
        if n > RYSER_MAX_N:
            raise ResourceLimitError(f"ryser permanent capped at n <= {RYSER_MAX_N}, got n = {n}")
        return complex(_ryser_gray(np.ascontiguousarray(mat)))
    raise InvalidInputError(f"unknown permanent algorithm {algorithm!r}")
