"""Two single-rail qubits under passive two-mode optics.

The combined 0/1/2-photon space of two modes is six dimensional with fixed
basis order

    |00>, |10>, |01>, |11>, |20>, |02>

(first four: computational occupations, last two: bunched).  The composite
gate phases(alpha,beta) . mix(eps) . phases(gamma,delta) is block diagonal
over photon number; its closed form, leakage into the bunched pair, the
exactly decoupled families at eps = k*pi/2, and the operator-Schmidt
entangling measure live here.

Qubit convention for extracted 4 x 4 gates: index = 2*n1 + n2, i.e. qubit 1
is mode 1 and occupies the first tensor slot.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError, LeakyGateError
from .fock import lift_unitary
from .linalg import require_unitary
from .modes import CompositeGateParams, composite_gate_mode_matrix, exact_sin_cos

__all__ = [
    "BASIS_SIX",
    "SWAP",
    "composite_gate_fock",
    "assemble_from_mode_matrix",
    "LeakageReport",
    "leakage",
    "decoupled_form_even",
    "decoupled_form_odd",
    "computational_block",
    "extract_computational",
    "nearest_unitary_block",
    "operator_schmidt_values",
    "entangling_measure",
    "leakage_and_measure",
]

BASIS_SIX: tuple[tuple[int, int], ...] = ((0, 0), (1, 0), (0, 1), (1, 1), (2, 0), (0, 2))

# bunched couplings: |11> (index 3) against |20>, |02> (indices 4, 5)
_LEAK_ENTRIES = ((3, 4), (3, 5), (4, 3), (5, 3))

# 6-dim computational indices reordered to qubit order 2*n1 + n2
_QUBIT_PERM = (0, 2, 1, 3)

SWAP = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)


def composite_gate_fock(params: CompositeGateParams) -> np.ndarray:
    """Closed-form 6 x 6 Fock matrix of the composite gate.

    Sector blocks: scalar 1 on the vacuum; on one photon
        [[e^{i(a+g)} c,  i e^{i(a+d)} s], [i e^{i(b+g)} s,  e^{i(b+d)} c]]
    with c = cos(eps), s = sin(eps); on two photons the double-angle block
    whose |11> <-> bunched couplings carry i*sin(2 eps)/sqrt(2).  Equals the
    permanent lift of the mode matrix entrywise.
    """
    a, b, g, d, e = params.as_tuple()
    s, c = exact_sin_cos(e)
    # double angles as products so quarter-turn zeros stay literal
    s2, c2 = 2.0 * s * c, c * c - s * s
    ph = np.exp
    u = np.zeros((6, 6), dtype=complex)
    u[0, 0] = 1.0
    u[1, 1] = ph(1j * (a + g)) * c
    u[1, 2] = 1j * ph(1j * (a + d)) * s
    u[2, 1] = 1j * ph(1j * (b + g)) * s
    u[2, 2] = ph(1j * (b + d)) * c
    u[3, 3] = ph(1j * (a + b + g + d)) * c2
    u[3, 4] = 1j * ph(1j * (a + b + 2 * g)) * s2 / math.sqrt(2)
    u[3, 5] = 1j * ph(1j * (a + b + 2 * d)) * s2 / math.sqrt(2)
    u[4, 3] = 1j * ph(1j * (2 * a + g + d)) * s2 / math.sqrt(2)
    u[5, 3] = 1j * ph(1j * (2 * b + g + d)) * s2 / math.sqrt(2)
    u[4, 4] = ph(2j * (a + g)) * c * c
    u[4, 5] = -ph(2j * (a + d)) * s * s
    u[5, 4] = -ph(2j * (b + g)) * s * s
    u[5, 5] = ph(2j * (b + d)) * c * c
    return u


def assemble_from_mode_matrix(v: np.ndarray, check: bool = True) -> np.ndarray:
    """6 x 6 Fock matrix of a two-mode unitary via per-sector permanent lifts."""
    v = np.asarray(v, dtype=complex)
    if v.shape != (2, 2):
        raise InvalidInputError(f"expected a 2 x 2 mode matrix, got {v.shape}")
    u = np.zeros((6, 6), dtype=complex)
    u[0, 0] = lift_unitary(v, 0, check=check).matrix[0, 0]
    u[1:3, 1:3] = lift_unitary(v, 1, check=False).matrix
    two = lift_unitary(v, 2, check=False).matrix  # sector order (2,0), (1,1), (0,2)
    pos = (4, 3, 5)
    for i in range(3):
        for j in range(3):
            u[pos[i], pos[j]] = two[i, j]
    return u


@dataclass(frozen=True)
class LeakageReport:
    """Frobenius weight of the computational <-> bunched couplings.

    ``offending`` lists (row, col, magnitude) for coupling entries above the
    listing tolerance; the report is "decoupled" when the list is empty.
    """

    frobenius_leakage: float
    offending: tuple[tuple[int, int, float], ...]


def leakage(gate: np.ndarray, listing_tol: float = 1e-12) -> LeakageReport:
    """Leakage of a 6 x 6 gate out of the computational subspace.

    For the composite gate this equals sqrt(2) * |sin(2 eps)|, which vanishes
    exactly when eps is a multiple of pi/2.
    """
    gate = np.asarray(gate, dtype=complex)
    if gate.shape != (6, 6):
        raise InvalidInputError(f"expected a 6 x 6 gate, got {gate.shape}")
    total = 0.0
    offending = []
    for r, c in _LEAK_ENTRIES:
        mag = abs(gate[r, c])
        total += mag * mag
        if mag > listing_tol:
            offending.append((r, c, float(mag)))
    return LeakageReport(frobenius_leakage=math.sqrt(total), offending=tuple(offending))


def decoupled_form_even(n: int, alpha: float, beta: float, gamma: float, delta: float) -> np.ndarray:
    """Exact composite gate at eps = n*pi: a diagonal phase gate.

    diag(1, (-1)^n e^{i(a+g)}, (-1)^n e^{i(b+d)}, e^{i(a+b+g+d)},
         e^{2i(a+g)}, e^{2i(b+d)}); leakage is identically zero.
    """
    sign = -1.0 if n % 2 else 1.0
    ph = np.exp
    return np.diag(
        [
            1.0,
            sign * ph(1j * (alpha + gamma)),
            sign * ph(1j * (beta + delta)),
            ph(1j * (alpha + beta + gamma + delta)),
            ph(2j * (alpha + gamma)),
            ph(2j * (beta + delta)),
        ]
    ).astype(complex)


def decoupled_form_odd(n: int, alpha: float, beta: float, gamma: float, delta: float) -> np.ndarray:
    """Exact composite gate at eps = (2n+1)*pi/2: a mode swap with phases.

    One-photon block antidiagonal with entries (-1)^n i e^{i(a+d)} and
    (-1)^n i e^{i(b+g)}; two-photon block maps |11> to -|11> and exchanges
    the bunched pair; leakage is identically zero.
    """
    sign = -1.0 if n % 2 else 1.0
    ph = np.exp
    u = np.zeros((6, 6), dtype=complex)
    u[0, 0] = 1.0
    u[1, 2] = sign * 1j * ph(1j * (alpha + delta))
    u[2, 1] = sign * 1j * ph(1j * (beta + gamma))
    u[3, 3] = -ph(1j * (alpha + beta + gamma + delta))
    u[4, 5] = -ph(2j * (alpha + delta))
    u[5, 4] = -ph(2j * (beta + gamma))
    return u


def computational_block(gate: np.ndarray) -> np.ndarray:
    """Raw 4 x 4 computational block in qubit order 2*n1 + n2 (no projection)."""
    gate = np.asarray(gate, dtype=complex)
    if gate.shape != (6, 6):
        raise InvalidInputError(f"expected a 6 x 6 gate, got {gate.shape}")
    return gate[np.ix_(_QUBIT_PERM, _QUBIT_PERM)]


def nearest_unitary_block(gate: np.ndarray) -> np.ndarray:
    """Polar-project the computational block without a leakage gate.

    Diagnostic companion to ``extract_computational`` for sweeps over leaky
    parameter regions; rank-deficient blocks (isolated points such as
    eps = pi/4) resolve through the SVD factors.
    """
    block = computational_block(gate)
    u, _, vh = np.linalg.svd(block)
    return u @ vh


def extract_computational(gate: np.ndarray, tol: float = 1e-9) -> np.ndarray:
    """Two-qubit gate carried by a decoupled 6 x 6 gate.

    Raises LeakyGateError when the bunched couplings exceed tol.  The block
    is polar-projected onto the unitary group; for leakage <= tol the
    projection moves it by O(tol) at most.
    """
    rep = leakage(gate)
    if rep.frobenius_leakage > tol:
        raise LeakyGateError(
            f"gate couples to bunched states: leakage {rep.frobenius_leakage:.3e} > {tol:.1e}"
        )
    return nearest_unitary_block(gate)


def operator_schmidt_values(gate: np.ndarray) -> np.ndarray:
    """Operator-Schmidt coefficients of a two-qubit gate, descending.

    Singular values of the reshuffled matrix R[(r1,c1),(r2,c2)] =
    g[(r1,r2),(c1,c2)]; their squares sum to ||g||_F^2 = 4 for unitary g.
    """
    gate = np.asarray(gate, dtype=complex)
    if gate.shape != (4, 4):
        raise InvalidInputError(f"expected a 4 x 4 gate, got {gate.shape}")
    r = gate.reshape(2, 2, 2, 2).transpose(0, 2, 1, 3).reshape(4, 4)
    return np.linalg.svd(r, compute_uv=False)


def entangling_measure(gate: np.ndarray) -> float:
    """Entangling power proxy in [0, 3/4], zero iff the gate is A (x) B or
    SWAP . (A (x) B).

    min over the gate and its SWAP twin of 1 - sigma_1^2 / 4, where sigma_1
    is the top operator-Schmidt coefficient.  Invariant under local
    unitaries on either side; CNOT scores 1/2.
    """
    gate = np.asarray(gate, dtype=complex)
    s_direct = operator_schmidt_values(gate)[0]
    s_swapped = operator_schmidt_values(SWAP @ gate)[0]
    raw = min(1.0 - (s_direct * s_direct) / 4.0, 1.0 - (s_swapped * s_swapped) / 4.0)
    return max(0.0, float(raw))


def leakage_and_measure(params: CompositeGateParams) -> tuple[float, float]:
    """Convenience pair (leakage, lenient entangling measure) for sweeps."""
    gate = composite_gate_fock(params)
    rep = leakage(gate)
    measure = entangling_measure(nearest_unitary_block(gate))
    return rep.frobenius_leakage, measure
