"""Hong-Ou-Mandel interference from the permanent lift.

Two photons meet on a balanced mixer: the coincidence amplitude |11> -> |11>
is cos^2 - sin^2 and dies at eps = pi/4, while the photons bunch into
|20> and |02> with amplitude i sin(2 eps)/sqrt(2).
"""

import math

import numpy as np

from focklift import beam_splitter, lift_unitary

print("eps        P(1,1)     P(2,0)     P(0,2)")
for k in range(0, 11):
    eps = k * math.pi / 40
    lifted = lift_unitary(beam_splitter(eps), 2)
    col = lifted.matrix[:, lifted.basis.index((1, 1))]
    p = np.abs(col) ** 2
    print(f"{eps:7.4f} {p[lifted.basis.index((1, 1))]:10.6f} "
          f"{p[lifted.basis.index((2, 0))]:10.6f} "
          f"{p[lifted.basis.index((0, 2))]:10.6f}")

eps = math.pi / 4
lifted = lift_unitary(beam_splitter(eps), 2)
i11 = lifted.basis.index((1, 1))
print(f"\nat eps = pi/4 the coincidence amplitude is "
      f"{abs(lifted.matrix[i11, i11]):.3e}: the dip is exact,")
print("and the bunched amplitudes carry everything:")
print(f"  <20|U|11> = {lifted.matrix[lifted.basis.index((2, 0)), i11]:.6f}")
print(f"  <02|U|11> = {lifted.matrix[lifted.basis.index((0, 2)), i11]:.6f}")
print(f"  each has |.|^2 = 1/2 = {abs(lifted.matrix[lifted.basis.index((2, 0)), i11]) ** 2:.6f}")
