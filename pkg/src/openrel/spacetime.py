"""Minkowski geometry in 1+1 (plus passenger y, z) dimensions.

Natural units (c = 1) and metric signature (+, -, -, -): a positive
squared interval means timelike separation. Boosts act along x only.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "FourVector",
    "SpacelikeSlice",
    "CausalClass",
    "boost",
    "interval",
    "causal_relation",
    "slice_time",
    "is_before",
    "ordering_flips",
    "LIGHTLIKE_RTOL",
    "ON_SLICE_TOL",
]

LIGHTLIKE_RTOL = 1e-12
ON_SLICE_TOL = 1e-12


def _require_finite(name: str, *values: float) -> None:
    if not all(math.isfinite(v) for v in values):
        raise ValueError(f"{name} must be finite, got {values}")


@dataclass(frozen=True)
class FourVector:
    """A spacetime point or displacement ``(t, x, y, z)``."""

    t: float
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __post_init__(self):
        for field in ("t", "x", "y", "z"):
            object.__setattr__(self, field, float(getattr(self, field)))
        _require_finite("FourVector components", self.t, self.x, self.y, self.z)

    @classmethod
    def from_sequence(cls, seq) -> "FourVector":
        """Build from 2 to 4 numbers; missing trailing components are zero."""
        values = [float(v) for v in seq]
        if not 2 <= len(values) <= 4:
            raise ValueError(f"expected 2 to 4 components, got {len(values)}")
        return cls(*values)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.t, self.x, self.y, self.z)

    def as_array(self) -> np.ndarray:
        return np.array(self.as_tuple())

    def __sub__(self, other: "FourVector") -> "FourVector":
        return FourVector(self.t - other.t, self.x - other.x, self.y - other.y, self.z - other.z)

    def __add__(self, other: "FourVector") -> "FourVector":
        return FourVector(self.t + other.t, self.x + other.x, self.y + other.y, self.z + other.z)

    @property
    def interval(self) -> float:
        """Squared interval ``t² - x² - y² - z²`` of this vector from the origin."""
        return self.t * self.t - (self.x * self.x + self.y * self.y + self.z * self.z)


@dataclass(frozen=True)
class SpacelikeSlice:
    """The hyperplane ``t' = tau`` of the frame with rapidity ``chi`` along x.

    Any finite rapidity gives a spacelike hyperplane.
    """

    chi: float
    tau: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "chi", float(self.chi))
        object.__setattr__(self, "tau", float(self.tau))
        _require_finite("slice parameters", self.chi, self.tau)

    @property
    def velocity(self) -> float:
        return math.tanh(self.chi)

    def t_at(self, x: float) -> float:
        """Magician-frame time of the slice at position ``x`` (for drawing)."""
        return (self.tau + x * math.sinh(self.chi)) / math.cosh(self.chi)


class CausalClass(enum.Enum):
    TIMELIKE_PAST = "timelike-past"
    TIMELIKE_FUTURE = "timelike-future"
    LIGHTLIKE = "lightlike"
    SPACELIKE = "spacelike"


def boost(v: FourVector, chi: float) -> FourVector:
    """Boost ``v`` into the frame moving with rapidity ``chi`` along +x.

    >>> boost(FourVector(1.0), 0.0)
    FourVector(t=1.0, x=0.0, y=0.0, z=0.0)
    """
    chi = float(chi)
    _require_finite("rapidity", chi)
    ch, sh = math.cosh(chi), math.sinh(chi)
    return FourVector(v.t * ch - v.x * sh, -v.t * sh + v.x * ch, v.y, v.z)


def interval(e1: FourVector, e2: FourVector) -> float:
    """Squared interval between two events."""
    return (e2 - e1).interval


def causal_relation(e1: FourVector, e2: FourVector) -> CausalClass:
    """Classify ``e2`` relative to ``e1``.

    The null test is ``|s²| <= 1e-12 * max|Δ|²`` so that near-null
    inputs are not misclassified by roundoff. Coincident events count
    as lightlike.
    """
    d = e2 - e1
    s2 = d.interval
    scale = max(abs(c) for c in d.as_tuple()) ** 2
    if abs(s2) <= LIGHTLIKE_RTOL * scale:
        return CausalClass.LIGHTLIKE
    if s2 < 0:
        return CausalClass.SPACELIKE
    return CausalClass.TIMELIKE_FUTURE if d.t > 0 else CausalClass.TIMELIKE_PAST


def slice_time(slc: SpacelikeSlice, e: FourVector) -> float:
    """Time coordinate of ``e`` in the slice's frame, ``t cosh χ - x sinh χ``."""
    return e.t * math.cosh(slc.chi) - e.x * math.sinh(slc.chi)


def is_before(slc: SpacelikeSlice, e: FourVector) -> bool:
    """True when ``e`` lies strictly to the past of the slice.

    Events on the slice (within ``ON_SLICE_TOL``, scaled for large
    coordinates) count as not yet before it.
    """
    t_prime = slice_time(slc, e)
    tol = ON_SLICE_TOL * max(1.0, abs(t_prime), abs(slc.tau))
    return t_prime < slc.tau - tol


def ordering_flips(e_a: FourVector, e_b: FourVector, chi: float) -> bool:
    """Whether frames with rapidity ``+chi`` and ``-chi`` disagree on the order of two events.

    The events must be simultaneous and spatially separated in the rest
    frame. At ``chi == 0`` both frames agree that the events are
    simultaneous, so nothing flips.
    """
    if e_a.t != e_b.t or e_a.x == e_b.x:
        raise ValueError(
            "ordering_flips needs events with equal t and distinct x in the rest frame"
        )
    _require_finite("rapidity", float(chi))
    plus, minus = SpacelikeSlice(chi), SpacelikeSlice(-chi)
    before_plus = np.sign(slice_time(plus, e_a) - slice_time(plus, e_b))
    before_minus = np.sign(slice_time(minus, e_a) - slice_time(minus, e_b))
    return bool(before_plus != before_minus)
