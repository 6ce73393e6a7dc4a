"""Fock-sector representation of mode unitaries.

A mode unitary v acting on M bosonic modes induces, on the N-photon sector,
the matrix

    <m| phi(v) |n> = Per(v[m|n]) / sqrt(prod_i m_i! * prod_j n_j!)

where v[m|n] repeats row i of v m_i times (output occupations) and column j
n_j times (input occupations).  ``lift_unitary`` computes that matrix with
the Ryser kernel; ``lift_via_substitution`` recomputes the same action by
literal operator substitution a_i+ -> sum_j v[j, i] a_j+ followed by
polynomial expansion, and serves as the independent oracle for the
orientation conventions above.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import InvalidInputError, ResourceLimitError
from .linalg import require_unitary
from .permanent import HAVE_NUMBA, _ryser_gray, njit, permanent

__all__ = [
    "FockBasis",
    "basis_enumerate",
    "LiftedUnitary",
    "lift_unitary",
    "OccupationPolynomial",
    "basis_monomial",
    "lift_via_substitution",
    "poly_to_vector",
    "sector_product_check",
    "basis_to_jsonable",
    "lifted_to_jsonable",
    "lifted_to_csv",
]

# Hard cap on sector dimension; C(N+M-1, M-1) grows fast.
MAX_BASIS_SIZE = 10_000


def _occupations(modes: int, photons: int):
    if modes == 1:
        yield (photons,)
        return
    for k in range(photons, -1, -1):
        for rest in _occupations(modes - 1, photons - k):
            yield (k,) + rest


@dataclass(frozen=True)
class FockBasis:
    """Ordered basis of the N-photon sector on M modes.

    States are occupation tuples in lexicographically descending order, so
    for (M=2, N=2) the order is (2,0), (1,1), (0,2).
    """

    modes: int
    photons: int
    states: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.states)

    def index(self, state: tuple[int, ...]) -> int:
        return self._index_map()[tuple(state)]

    def _index_map(self) -> dict[tuple[int, ...], int]:
        m = getattr(self, "_imap", None)
        if m is None:
            m = {s: i for i, s in enumerate(self.states)}
            object.__setattr__(self, "_imap", m)
        return m


@lru_cache(maxsize=None)
def basis_enumerate(modes: int, photons: int) -> FockBasis:
    """Enumerate the N-photon occupation basis on M modes.

    Size is C(N+M-1, M-1); basis sizes above MAX_BASIS_SIZE raise
    ResourceLimitError before any enumeration work is done.
    """
    if modes < 1:
        raise InvalidInputError(f"modes must be >= 1, got {modes}")
    if photons < 0:
        raise InvalidInputError(f"photons must be >= 0, got {photons}")
    size = math.comb(photons + modes - 1, modes - 1)
    if size > MAX_BASIS_SIZE:
        raise ResourceLimitError(
            f"sector basis has {size} states, cap is {MAX_BASIS_SIZE} (M={modes}, N={photons})"
        )
    states = tuple(_occupations(modes, photons))
    return FockBasis(modes=modes, photons=photons, states=states)


@dataclass(frozen=True)
class LiftedUnitary:
    """A mode unitary represented on one photon-number sector."""

    basis: FockBasis
    matrix: np.ndarray


@lru_cache(maxsize=None)
def _rep_and_norm(modes: int, photons: int) -> tuple[np.ndarray, np.ndarray]:
    """Per-state repeated mode indices (D, N) and norms sqrt(prod n_i!)."""
    basis = basis_enumerate(modes, photons)
    d = len(basis)
    rep = np.zeros((d, photons), dtype=np.int64)
    norm = np.zeros(d, dtype=np.float64)
    for k, state in enumerate(basis.states):
        idx = [i for i, n in enumerate(state) for _ in range(n)]
        rep[k, :] = idx
        norm[k] = math.sqrt(math.prod(math.factorial(n) for n in state))
    return rep, norm


@njit(cache=True)
def _lift_kernel(v, rep, norm):  # pragma: no cover - compiled
    d, n = rep.shape
    out = np.empty((d, d), dtype=np.complex128)
    sub = np.empty((n, n), dtype=np.complex128)
    for a in range(d):
        for b in range(d):
            for i in range(n):
                for j in range(n):
                    sub[i, j] = v[rep[a, i], rep[b, j]]
            out[a, b] = _ryser_gray(sub) / (norm[a] * norm[b])
    return out


def _lift_python(v: np.ndarray, rep: np.ndarray, norm: np.ndarray) -> np.ndarray:
    d = rep.shape[0]
    out = np.empty((d, d), dtype=complex)
    for a in range(d):
        for b in range(d):
            sub = v[np.ix_(rep[a], rep[b])]
            out[a, b] = permanent(sub) / (norm[a] * norm[b])
    return out


def lift_unitary(v: np.ndarray, photons: int, check: bool = True) -> LiftedUnitary:
    """Lift a mode unitary to its matrix on the N-photon sector.

    Parameters
    ----------
    v : (M, M) array_like
        Mode unitary; rows are output modes, columns input modes.
    photons : int
        Sector photon number N >= 0.  N = 0 gives the 1 x 1 identity.
    check : bool
        Validate unitarity of v (skip only in hot loops that construct v
        as an exact exponential).
    """
    v = np.asarray(v, dtype=complex)
    if check:
        v = require_unitary(v, name="mode matrix")
    rep, norm = _rep_and_norm(v.shape[0], photons)
    kern = _lift_kernel if HAVE_NUMBA else _lift_python
    matrix = kern(np.ascontiguousarray(v), rep, norm)
    return LiftedUnitary(basis=basis_enumerate(v.shape[0], photons), matrix=matrix)


# ---------------------------------------------------------------------------
# substitution oracle
# ---------------------------------------------------------------------------

class OccupationPolynomial:
    """Polynomial in creation operators applied to the vacuum.

    Terms map occupation-exponent tuples m to coefficients c_m, representing
    sum_m c_m * prod_i (a_i+)^(m_i) |vac>.  The monomials are orthogonal with
    squared norms prod_i m_i!, which fixes ``norm_squared`` and ``inner``.
    """

    __slots__ = ("modes", "terms")

    def __init__(self, modes: int, terms: dict[tuple[int, ...], complex] | None = None):
        self.modes = modes
        self.terms: dict[tuple[int, ...], complex] = {}
        if terms:
            for m, c in terms.items():
                if len(m) != modes:
                    raise InvalidInputError(f"term {m} does not have {modes} modes")
                if any(k < 0 for k in m):
                    raise InvalidInputError(f"term {m} has a negative exponent")
                if c != 0:
                    self.terms[tuple(int(k) for k in m)] = complex(c)

    def prune(self, eps: float = 1e-15) -> "OccupationPolynomial":
        self.terms = {m: c for m, c in self.terms.items() if abs(c) > eps}
        return self

    def norm_squared(self) -> float:
        return float(
            sum(abs(c) ** 2 * math.prod(math.factorial(k) for k in m) for m, c in self.terms.items())
        )

    def inner(self, other: "OccupationPolynomial") -> complex:
        """<self|other> over the vacuum-applied states."""
        if self.modes != other.modes:
            raise InvalidInputError("polynomials act on different mode counts")
        small, big = (self.terms, other.terms) if len(self.terms) < len(other.terms) else (other.terms, self.terms)
        acc = 0j
        for m, c in small.items():
            d = big.get(m)
            if d is not None:
                w = math.prod(math.factorial(k) for k in m)
                if big is other.terms:
                    acc += np.conj(c) * d * w
                else:
                    acc += np.conj(d) * c * w
        return complex(acc)

    def degrees(self) -> set[int]:
        """Total photon numbers present in the polynomial."""
        return {sum(m) for m in self.terms}

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"OccupationPolynomial(modes={self.modes}, terms={self.terms})"


def basis_monomial(state: tuple[int, ...]) -> OccupationPolynomial:
    """Normalized Fock basis state |n> as an occupation polynomial."""
    state = tuple(int(k) for k in state)
    coeff = 1.0 / math.sqrt(math.prod(math.factorial(k) for k in state))
    return OccupationPolynomial(len(state), {state: coeff})


def lift_via_substitution(v: np.ndarray, poly: OccupationPolynomial) -> OccupationPolynomial:
    """Apply a mode unitary to a creation polynomial by substitution.

    Each a_i+ is replaced by sum_j v[j, i] a_j+ (column i of the mode
    matrix) and the product is expanded term by term.  Exponential in the
    photon number; this is the oracle, not the production path.
    """
    v = np.asarray(v, dtype=complex)
    if v.shape != (poly.modes, poly.modes):
        raise InvalidInputError(f"mode matrix shape {v.shape} does not match modes={poly.modes}")
    modes = poly.modes
    out: dict[tuple[int, ...], complex] = {}
    for m, c in poly.terms.items():
        # expand prod_i (sum_j v[j,i] a_j+)^(m_i), one linear factor at a time
        partial: dict[tuple[int, ...], complex] = {(0,) * modes: c}
        for i, power in enumerate(m):
            for _ in range(power):
                nxt: dict[tuple[int, ...], complex] = {}
                for mono, coef in partial.items():
                    for j in range(modes):
                        vji = v[j, i]
                        if vji == 0:
                            continue
                        key = mono[:j] + (mono[j] + 1,) + mono[j + 1 :]
                        nxt[key] = nxt.get(key, 0j) + coef * vji
                partial = nxt
        for mono, coef in partial.items():
            out[mono] = out.get(mono, 0j) + coef
    return OccupationPolynomial(modes, out).prune()


def poly_to_vector(poly: OccupationPolynomial, basis: FockBasis) -> np.ndarray:
    """Amplitudes <m|P|vac> of a polynomial on a sector basis.

    <m| prod (a_i+)^(m_i) |vac> = sqrt(prod m_i!), so each coefficient picks
    up the monomial norm.  Terms outside the sector raise InvalidInputError.
    """
    vec = np.zeros(len(basis), dtype=complex)
    for m, c in poly.terms.items():
        if sum(m) != basis.photons:
            raise InvalidInputError(
                f"term {m} has {sum(m)} photons, basis sector has {basis.photons}"
            )
        vec[basis.index(m)] = c * math.sqrt(math.prod(math.factorial(k) for k in m))
    return vec


# ---------------------------------------------------------------------------
# product-structure check for block-diagonal mode unitaries
# ---------------------------------------------------------------------------

def sector_product_check(v_c: np.ndarray, v_a: np.ndarray, photons: int) -> float:
    """Residual of the factorization of phi(v_c (+) v_a) on one sector.

    For a block-diagonal mode unitary the lifted matrix must factor as
    phi[(m_c, m_a), (n_c, n_a)] = phi_c[m_c, n_c] * phi_a[m_a, n_a] whenever
    the per-block photon numbers agree, and vanish otherwise.  Returns the
    max entrywise deviation over the full sector.
    """
    v_c = require_unitary(np.asarray(v_c, dtype=complex), name="computational block")
    v_a = require_unitary(np.asarray(v_a, dtype=complex), name="ancilla block")
    mc, ma = v_c.shape[0], v_a.shape[0]
    v = np.zeros((mc + ma, mc + ma), dtype=complex)
    v[:mc, :mc] = v_c
    v[mc:, mc:] = v_a
    full = lift_unitary(v, photons)
    lifts_c = {k: lift_unitary(v_c, k) for k in range(photons + 1)}
    lifts_a = {k: lift_unitary(v_a, k) for k in range(photons + 1)}
    worst = 0.0
    for r, m in enumerate(full.basis.states):
        m_c, m_a = m[:mc], m[mc:]
        for s, n in enumerate(full.basis.states):
            n_c, n_a = n[:mc], n[mc:]
            if sum(m_c) == sum(n_c):
                lc = lifts_c[sum(m_c)]
                la = lifts_a[sum(m_a)]
                expected = lc.matrix[lc.basis.index(m_c), lc.basis.index(n_c)] * \
                    la.matrix[la.basis.index(m_a), la.basis.index(n_a)]
            else:
                expected = 0j
            dev = abs(full.matrix[r, s] - expected)
            if dev > worst:
                worst = dev
    return worst


# ---------------------------------------------------------------------------
# export helpers
# ---------------------------------------------------------------------------

def basis_to_jsonable(basis: FockBasis) -> list[list[int]]:
    """FockBasis as a JSON-ready array of occupation vectors."""
    return [list(s) for s in basis.states]


def lifted_to_jsonable(lifted: LiftedUnitary) -> dict:
    """Lifted matrix as nested [re, im] pairs plus its basis."""
    return {
        "modes": lifted.basis.modes,
        "photons": lifted.basis.photons,
        "basis": basis_to_jsonable(lifted.basis),
        "matrix": [[[float(z.real), float(z.imag)] for z in row] for row in lifted.matrix],
    }


def lifted_to_csv(lifted: LiftedUnitary) -> str:
    """Lifted matrix as CSV text: one row per line, flat re,im pairs."""
    lines = []
    for row in lifted.matrix:
        cells = []
        for z in row:
            cells.append(repr(float(z.real)))
            cells.append(repr(float(z.imag)))
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"
