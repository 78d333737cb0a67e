"""State vectors assigned by Alice and Bob to the same two spins.

Both spins start in |x+>. The left spin has sigma_y measured at the left
event, the right spin at the right event.
"""
import itertools

from openrel import FourVector, ObserverSlice, OutcomeBranch, description_on_slice
from openrel.quantum import measure_sigma_y, pauli_expectation, prepare_initial

events = (FourVector(0.0, -1.0), FourVector(0.0, 1.0))
alice = ObserverSlice("alice", tau=0.0, chi=-0.5)
bob = ObserverSlice("bob", tau=0.0, chi=0.5)

for a, b in itertools.product((1, -1), repeat=2):
    left = description_on_slice(alice, OutcomeBranch(a=a), events)
    right = description_on_slice(bob, OutcomeBranch(b=b), events)
    print(f"a={a:+d} b={b:+d}")
    # alice has seen only a, bob only b
    print("  alice:", left.amplitudes.round(4))
    print("  bob:  ", right.amplitudes.round(4))

# one seeded run: sample both outcomes, then read the post-measurement state
state = prepare_initial()
a, state, p_a = measure_sigma_y(state, 1, 5)
b, state, p_b = measure_sigma_y(state, 2, 6)
print(f"\nsampled a={a:+d} (p={p_a}), b={b:+d} (p={p_b})")
print("<sigma_y> on each spin afterwards:", pauli_expectation(state, 1, "y"), pauli_expectation(state, 2, "y"))
