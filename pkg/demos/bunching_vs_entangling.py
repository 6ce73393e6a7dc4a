"""The trade-off at the heart of the package, in one table.

Sweep the mixing angle and report, side by side, how much the gate leaks
photons into bunched states and how entangling its computational action
could at best be.  The two columns never peak together: entangling power
needs exactly the mixing that ruins the qubit encoding.
"""

import math

from focklift import (
    composite_gate_fock,
    CompositeGateParams,
    entangling_measure,
    leakage,
    nearest_unitary_block,
)

rows = []
for k in range(0, 21):
    eps = k * math.pi / 40  # 0 .. pi/2
    best = 0.0
    worst_leak = 0.0
    # phases alone never change either number much; a small scan suffices
    for j in range(5):
        phases = [0.31 * j, -0.7 + 0.41 * j, 0.11 * j, 1.3 - 0.23 * j]
        gate = composite_gate_fock(CompositeGateParams(*phases, eps))
        rep = leakage(gate)
        best = max(best, entangling_measure(nearest_unitary_block(gate)))
        worst_leak = max(worst_leak, rep.frobenius_leakage)
    rows.append((eps, worst_leak, best))

print("eps        leakage    entangling_measure")
for eps, leak, meas in rows:
    bar = "#" * int(round(20 * meas))
    print(f"{eps:7.4f}  {leak:9.6f}  {meas:9.6f}  {bar}")

print("\nleakage zero  -> measure zero (decoupled points eps = k pi/2)")
print("measure high  -> leakage high (maximal near eps = pi/4)")
print("\nno parameter choice gives leakage 0 and measure > 0 at once;")
print("the nogo search certifies this numerically, see no_go_search.py.")
