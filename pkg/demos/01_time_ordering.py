"""Two spacelike events, three observers, three different orderings.

Alice moves left, Bob moves right, the magician stays at rest. Each of them
slices spacetime along their own surfaces of simultaneity.
"""
import numpy as np

from openrel import FourVector, SpacelikeSlice, causal_relation, slice_time

left, right = FourVector(0.0, -1.0), FourVector(0.0, 1.0)
print("relation between the events:", causal_relation(left, right).name)

for name, chi in [("alice", -0.5), ("magician", 0.0), ("bob", 0.5)]:
    slc = SpacelikeSlice(chi)
    t_left, t_right = slice_time(slc, left), slice_time(slc, right)
    first = "left" if t_left < t_right else "right" if t_right < t_left else "neither"
    print(f"{name:9s} v = {slc.velocity:+.3f}  t'(left) = {t_left:+.4f}  t'(right) = {t_right:+.4f}  first: {first}")

# the split is symmetric: at every rapidity, +chi and -chi disagree
chis = np.linspace(0.05, 3.0, 60)
gap = [slice_time(SpacelikeSlice(c), left) - slice_time(SpacelikeSlice(c), right) for c in chis]
print("t'(left) - t'(right) at chi = 1:", round(2 * np.sinh(1.0), 6), "vs", round(np.interp(1.0, chis, gap), 6))
