"""No single map sends Alice's description to Bob's.

Two rows of the table share Alice's state but carry orthogonal Bob states,
so no function of the left column reproduces the right column. The best
linear map misses by a finite amount.
"""
from openrel import (
    BouncerParams,
    FourVector,
    ObserverSlice,
    build_classical_table,
    build_quantum_table,
    check_table,
)

events = (FourVector(0.0, -1.0), FourVector(0.0, 1.0))
alice = ObserverSlice("alice", tau=0.0, chi=-0.5)
bob = ObserverSlice("bob", tau=0.0, chi=0.5)

quantum = check_table(build_quantum_table(events, alice, bob))
print("quantum:  ", quantum.to_json())

for k in (4.0, 1.0, 0.0):
    params = BouncerParams(m=3.0, p=4.0, k=k)
    verdict = check_table(build_classical_table(params, alice, bob))
    print(f"classical k={k}: function exists = {verdict.function_exists}, "
          f"best linear residual = {verdict.best_linear_residual:.6f}")
