"""How a mode unitary becomes a Fock-space unitary.

The lift phi(v) on the N-photon sector has entries
per(v[rows, cols]) / sqrt(norms), a permanent per matrix element.
This walk-through checks the properties that make phi trustworthy:
it is a homomorphism, it is unitary, and it agrees with brute-force
operator substitution.
"""

import numpy as np

from focklift import (
    basis_enumerate,
    basis_monomial,
    haar_random_unitary,
    lift_unitary,
    lift_via_substitution,
    poly_to_vector,
)

rng = np.random.default_rng(11)
modes, photons = 3, 2

v = haar_random_unitary(modes, rng)
lifted = lift_unitary(v, photons)
print(f"{modes} modes, {photons} photons -> sector dimension {len(lifted.basis)}")
print("basis order:", lifted.basis.states)

phi = lifted.matrix
print(f"\nunitarity:     max |phi+ phi - 1| = "
      f"{np.max(np.abs(phi.conj().T @ phi - np.eye(len(lifted.basis)))):.3e}")

w = haar_random_unitary(modes, rng)
prod_first = lift_unitary(v @ w, photons).matrix
lift_first = lift_unitary(v, photons).matrix @ lift_unitary(w, photons).matrix
print(f"homomorphism:  max |phi(vw) - phi(v)phi(w)| = "
      f"{np.max(np.abs(prod_first - lift_first)):.3e}")

# substitution oracle: replace each creation operator by its image and
# expand; exponential in photon number, so only good for checking
basis = basis_enumerate(modes, photons)
worst = 0.0
for j, state in enumerate(basis.states):
    image = lift_via_substitution(v, basis_monomial(state))
    worst = max(worst, float(np.max(np.abs(
        poly_to_vector(image, basis) - phi[:, j]))))
print(f"substitution:  max column deviation = {worst:.3e}")

print("\none matrix element, spelled out: <(1,1,0)| phi |(0,2,0)> equals")
print("per([[v01, v01], [v11, v11]]) / sqrt(2):")
sub = np.array([[v[0, 1], v[0, 1]], [v[1, 1], v[1, 1]]])
per = sub[0, 0] * sub[1, 1] + sub[0, 1] * sub[1, 0]
r, c = basis.index((1, 1, 0)), basis.index((0, 2, 0))
print(f"  permanent route: {per / np.sqrt(2):.6f}")
print(f"  lifted matrix:   {phi[r, c]:.6f}")
