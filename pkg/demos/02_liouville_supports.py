"""Liouville supports of the kicked bouncers, slice by slice.

Each bouncer starts at energy E0 and receives a kick of +k or -k with equal
odds. Before a kick the energy axis holds one point; after it, two.
"""
import numpy as np

from openrel import BouncerParams, MeasurementRecord, SpacelikeSlice, kicked_energy, rest_energy, support_on_slice

params = BouncerParams(m=3.0, p=4.0, k=4.0)
print("E0 =", rest_energy(params), " E+ =", kicked_energy(params, 1), " E- =", kicked_energy(params, -1))

for name, slc in [("alice", SpacelikeSlice(-0.5)), ("bob", SpacelikeSlice(0.5)),
                  ("magician, early", SpacelikeSlice(0.0, -2.0)), ("magician, late", SpacelikeSlice(0.0, 2.0))]:
    support = support_on_slice(params, slc)
    print(f"\n{name}: {len(support)} point(s)")
    for (e1, e2), w in support:
        print(f"  (E1, E2) = ({e1:.6f}, {e2:.6f})  weight {w}")

# measuring the sign of particle 1's kick collapses its axis
after = support_on_slice(params, SpacelikeSlice(0.0, 2.0), MeasurementRecord(particle_1=-1))
print("\nlate magician, after reading particle 1 = -1:", after.to_json())

# a sweep over rapidity and slice time only ever finds 1, 2 or 4 points
sizes = {len(support_on_slice(params, SpacelikeSlice(c, t)))
         for c in np.linspace(-2, 2, 21) for t in np.linspace(-3, 3, 25)}
print("support sizes seen in sweep:", sorted(sizes))
