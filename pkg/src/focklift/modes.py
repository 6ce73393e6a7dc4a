"""Mode-layer objects: su(2) generators, the five-parameter composite gate,
and triangular mesh decomposition of mode unitaries.

Mode matrices act on column vectors of mode amplitudes; rows are output
modes, columns input modes, matching the lift orientation in ``fock``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidInputError
from .linalg import require_unitary

__all__ = [
    "generator_xyz",
    "CompositeGateParams",
    "beam_splitter",
    "composite_gate_mode_matrix",
    "OpticalElement",
    "element_matrix",
    "reck_decompose",
    "recompose",
    "elements_to_jsonable",
    "elements_from_jsonable",
]

_TAU = 2.0 * math.pi
_QUARTER_TURN = math.pi / 2


def exact_sin_cos(angle: float) -> tuple[float, float]:
    """(sin, cos) with exact values on float multiples of pi/2.

    A float equal to q*(pi/2) stands for a quarter turn, so it gets the
    exact lattice values instead of ~1e-16 trig residue.  This is what
    makes decoupling points land at literal zero leakage downstream.
    """
    q = round(angle / _QUARTER_TURN)
    if angle == q * _QUARTER_TURN:
        return ((0.0, 1.0), (1.0, 0.0), (0.0, -1.0), (-1.0, 0.0))[q % 4]
    return math.sin(angle), math.cos(angle)


def generator_xyz() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Halved two-mode quadratic generators (X, Y, Z) with [X, Y] = iZ.

    These are the single-photon matrices of (a2+a1 + a1+a2)/2,
    i(a2+a1 - a1+a2)/2 and (n1 - n2)/2.  The composite gate below uses the
    unhalved mixing generator so that its one-photon block carries cos(eps)
    rather than cos(eps/2).
    """
    x = np.array([[0.0, 0.5], [0.5, 0.0]], dtype=complex)
    y = np.array([[0.0, -0.5j], [0.5j, 0.0]], dtype=complex)
    z = np.array([[0.5, 0.0], [0.0, -0.5]], dtype=complex)
    return x, y, z


def _reduce_angle(a: float) -> float:
    """Reduce an angle to the canonical range (-pi, pi]."""
    r = math.remainder(float(a), _TAU)
    return math.pi if r == -math.pi else r


@dataclass(frozen=True)
class CompositeGateParams:
    """Parameters (alpha, beta, gamma, delta, epsilon) of the composite gate
    phases(alpha, beta) . mix(epsilon) . phases(gamma, delta).

    Angles are reduced to (-pi, pi] on construction; the reduction never
    changes the gate beyond floating rounding.
    """

    alpha: float
    beta: float
    gamma: float
    delta: float
    epsilon: float

    def __post_init__(self):
        for name in ("alpha", "beta", "gamma", "delta", "epsilon"):
            object.__setattr__(self, name, _reduce_angle(getattr(self, name)))

    def as_tuple(self) -> tuple[float, float, float, float, float]:
        return (self.alpha, self.beta, self.gamma, self.delta, self.epsilon)


def beam_splitter(epsilon: float) -> np.ndarray:
    """Two-mode mixer exp(i*eps*(a2+a1 + a1+a2)) at the mode level."""
    s, c = exact_sin_cos(epsilon)
    return np.array([[c, 1j * s], [1j * s, c]], dtype=complex)


def composite_gate_mode_matrix(params: CompositeGateParams) -> np.ndarray:
    """Mode matrix diag(e^ia, e^ib) . B(eps) . diag(e^ig, e^id)."""
    a, b, g, d, e = params.as_tuple()
    pre = np.array([np.exp(1j * g), np.exp(1j * d)])
    post = np.array([np.exp(1j * a), np.exp(1j * b)])
    return (beam_splitter(e) * pre[np.newaxis, :]) * post[:, np.newaxis]


# ---------------------------------------------------------------------------
# mesh decomposition
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class OpticalElement:
    """One passive element of a mesh.

    kind "phase-shifter": modes = (m,), angles = (lam,), matrix is the
    identity with e^{i lam} at mode m.  kind "beam-splitter": modes = (p, q),
    angles = (theta, phi), matrix embeds
    [[e^{i phi} cos th, i sin th], [i e^{i phi} sin th, cos th]] on (p, q).
    Mode indices are 0-based.
    """

    kind: str
    modes: tuple[int, ...]
    angles: tuple[float, ...]

    def __post_init__(self):
        if self.kind == "phase-shifter":
            if len(self.modes) != 1 or len(self.angles) != 1:
                raise InvalidInputError("phase-shifter takes one mode and one angle")
        elif self.kind == "beam-splitter":
            if len(self.modes) != 2 or len(self.angles) != 2:
                raise InvalidInputError("beam-splitter takes two modes and two angles")
            if self.modes[0] == self.modes[1]:
                raise InvalidInputError("beam-splitter modes must differ")
        else:
            raise InvalidInputError(f"unknown element kind {self.kind!r}")
        if any(m < 0 for m in self.modes):
            raise InvalidInputError(f"negative mode index in {self.modes}")


def element_matrix(element: OpticalElement, dim: int) -> np.ndarray:
    """Dense dim x dim matrix of one element."""
    if any(m >= dim for m in element.modes):
        raise InvalidInputError(f"element touches mode {max(element.modes)}, dim is {dim}")
    m = np.eye(dim, dtype=complex)
    if element.kind == "phase-shifter":
        m[element.modes[0], element.modes[0]] = np.exp(1j * element.angles[0])
    else:
        p, q = element.modes
        th, ph = element.angles
        s, c = exact_sin_cos(th)
        eph = np.exp(1j * ph)
        m[p, p] = eph * c
        m[p, q] = 1j * s
        m[q, p] = 1j * eph * s
        m[q, q] = c
    return m


def reck_decompose(v: np.ndarray, zero_eps: float = 1e-14) -> list[OpticalElement]:
    """Triangular decomposition of a mode unitary into mesh elements.

    Nulls the below-diagonal entries row by row from the bottom with
    two-mode rotations applied from the right, leaving a diagonal phase
    layer.  Emits at most M phase shifters plus M(M-1)/2 beam splitters;
    elements indistinguishable from the identity at zero_eps are dropped.
    recompose(reck_decompose(v), M) reproduces v to ~1e-12 Frobenius.
    """
    v = require_unitary(np.asarray(v, dtype=complex), name="mode matrix")
    m = v.shape[0]
    work = v.copy()
    applied: list[OpticalElement] = []
    for r in range(m - 1, 0, -1):
        for p in range(r):
            q = r
            urp = work[r, p]
            if abs(urp) <= zero_eps:
                continue
            urq = work[r, q]
            th = math.atan2(abs(urp), abs(urq))
            ph = float(np.angle(urp) - np.angle(urq) - math.pi / 2)
            el = OpticalElement("beam-splitter", (p, q), (th, ph))
            # right-multiply work by the element's inverse: mix columns p, q
            c, s = math.cos(th), math.sin(th)
            emph = np.exp(-1j * ph)
            col_p = work[:, p].copy()
            col_q = work[:, q].copy()
            work[:, p] = emph * c * col_p - 1j * s * col_q
            work[:, q] = -1j * emph * s * col_p + c * col_q
            applied.append(el)
    elements: list[OpticalElement] = []
    for k in range(m):
        lam = float(np.angle(work[k, k]))
        if abs(lam) > zero_eps:
            elements.append(OpticalElement("phase-shifter", (k,), (lam,)))
    elements.extend(reversed(applied))
    return elements


def recompose(elements: list[OpticalElement], dim: int) -> np.ndarray:
    """Product of element matrices in list order (empty list -> identity)."""
    if dim < 1:
        raise InvalidInputError(f"dim must be >= 1, got {dim}")
    out = np.eye(dim, dtype=complex)
    for el in elements:
        out = out @ element_matrix(el, dim)
    return out


def elements_to_jsonable(elements: list[OpticalElement]) -> list[dict]:
    return [
        {"kind": el.kind, "modes": list(el.modes), "angles": [float(a) for a in el.angles]}
        for el in elements
    ]


def elements_from_jsonable(data: list[dict]) -> list[OpticalElement]:
    out = []
    for entry in data:
        try:
            out.append(
                OpticalElement(
                    kind=entry["kind"],
                    modes=tuple(int(x) for x in entry["modes"]),
                    angles=tuple(float(x) for x in entry["angles"]),
                )
            )
        except (KeyError, TypeError) as exc:
            raise InvalidInputError(f"malformed netlist entry {entry!r}") from exc
    return out
