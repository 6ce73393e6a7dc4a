"""Decompose a random interferometer into a triangular mesh.

Any mode unitary factors into two-mode mixers and single-mode phases.
The element list is what one would hand to a photonic chip; recomposition
checks the factorization to machine precision.
"""

import json

import numpy as np

from focklift import (
    elements_to_jsonable,
    haar_random_unitary,
    reck_decompose,
    recompose,
)

dim = 4
v = haar_random_unitary(dim, np.random.default_rng(7))
elements = reck_decompose(v)

print(f"Haar-random {dim} x {dim} unitary -> {len(elements)} elements "
      f"(at most dim(dim+1)/2 = {dim * (dim + 1) // 2})\n")

for i, el in enumerate(elements):
    angles = ", ".join(f"{a:+.4f}" for a in el.angles)
    modes = ",".join(str(m) for m in el.modes)
    print(f"  {i:2d}  {el.kind:<14s} modes ({modes})  angles ({angles})")

rebuilt = recompose(elements, dim)
print(f"\nmax |recomposed - original| = {np.max(np.abs(rebuilt - v)):.3e}")

n_params = sum(len(el.angles) for el in elements)
print(f"free angles used: {n_params} (a {dim}-mode unitary has {dim * dim})")

print("\nelement list as JSON:")
print(json.dumps(elements_to_jsonable(elements[:3]), indent=2), "...")
