"""Numerical certificates: decoupling and entangling exclude each other.

Three searches over passive linear optics on single-rail qubits.
Constrained runs demand (near) zero leakage into bunched states and then
maximize entangling power; they all end at zero.  The unconstrained run
shows the optimizer itself is not the problem: allow bunching and it
finds strongly entangling gates immediately.
"""

from dataclasses import replace

from focklift import nogo_search_ancilla, nogo_search_two_mode, SearchConfig

cfg = SearchConfig(modes=2, restarts=30, max_iterations=400,
                   penalty_weight=1e5, seed=2026)

print("two rails, nothing else " + "-" * 40)
res = nogo_search_two_mode(cfg, jobs=2)
print(f"  constrained:   best measure {res.best_entangling_measure:.3e} "
      f"at leakage {res.best_leakage:.3e}  (feasible: {res.feasible})")

free = nogo_search_two_mode(replace(cfg, penalty_weight=0.0), jobs=2)
print(f"  unconstrained: best measure {free.best_entangling_measure:.4f} "
      f"at leakage {free.best_leakage:.3f}")
print("  one beam splitter already entangles, but only by bunching photons")

print("\ntwo rails + one empty ancilla mode " + "-" * 30)
cfg3 = SearchConfig(modes=3, restarts=15, max_iterations=400,
                    penalty_weight=1e5, seed=2027)
res = nogo_search_ancilla(cfg3, jobs=2)
print(f"  constrained:   best measure {res.best_entangling_measure:.3e} "
      f"(feasible: {res.feasible})")

print("\ntwo rails + two ancilla modes carrying one photon " + "-" * 15)
cfg4 = SearchConfig(modes=4, ancilla_photons=1, restarts=15,
                    max_iterations=400, penalty_weight=1e5, seed=2028)
res = nogo_search_ancilla(cfg4, jobs=2)
print(f"  constrained:   best measure {res.best_entangling_measure:.3e} "
      f"(feasible: {res.feasible})")

print("\nextra modes and extra photons do not help: demanding that the")
print("computational states come back clean forces the gate to act as a")
print("(swapped) pair of single-qubit phase gates, which cannot entangle.")
