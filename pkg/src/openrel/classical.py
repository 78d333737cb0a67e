"""Two kicked bouncers and their Liouville supports on the (E1, E2) plane.

Two equal masses bounce along fixed segments of the x axis with momenta
``±p``. Each receives a momentum kick ``k`` at a given spacetime event,
after which its energy is ``sqrt(m² + (k ± p)²)`` with the sign unknown
except statistically. An observer's description on a spacelike slice
depends on which kicks lie in that slice's past.

Energies are always reported in the rest frame of the segments, even for
boosted slices.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Optional

import numpy as np

from .errors import (
    ImpossibleOutcomeError,
    InconsistentRecordError,
    InvalidScenarioError,
    OutOfModelError,
)
from .spacetime import CausalClass, FourVector, SpacelikeSlice, causal_relation, is_before

__all__ = [
    "BouncerParams",
    "LiouvilleSupport",
    "MeasurementRecord",
    "rest_energy",
    "kicked_energy",
    "support_on_slice",
    "collapse",
    "bouncer_position",
    "ENERGY_TOL",
    "WEIGHT_TOL",
]

ENERGY_TOL = 1e-9
WEIGHT_TOL = 1e-12


@dataclass(frozen=True)
class BouncerParams:
    m: float = 3.0
    p: float = 4.0
    k: float = 4.0
    segment_half_length: float = 1.0
    x_center_1: float = -1.0
    x_center_2: float = 1.0
    kick_event_1: FourVector = field(default_factory=lambda: FourVector(0.0, -1.0))
    kick_event_2: FourVector = field(default_factory=lambda: FourVector(0.0, 1.0))

    def __post_init__(self):
        for name in ("m", "p", "k", "segment_half_length", "x_center_1", "x_center_2"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)
        if self.m <= 0:
            raise ValueError(f"mass must be positive, got {self.m}")
        if self.p < 0:
            raise ValueError(f"momentum magnitude must be nonnegative, got {self.p}")
        if self.segment_half_length <= 0:
            raise ValueError(f"segment half-length must be positive, got {self.segment_half_length}")
        relation = causal_relation(self.kick_event_1, self.kick_event_2)
        if relation is not CausalClass.SPACELIKE:
            raise InvalidScenarioError(
                f"kick events must be spacelike-separated, got {relation.value}"
            )

    def kick_event(self, particle: int) -> FourVector:
        _check_particle(particle)
        return self.kick_event_1 if particle == 1 else self.kick_event_2

    def x_center(self, particle: int) -> float:
        _check_particle(particle)
        return self.x_center_1 if particle == 1 else self.x_center_2


@dataclass(frozen=True)
class MeasurementRecord:
    """Observed kicked-energy branch per particle: +1 for E₊, -1 for E₋, None if unmeasured."""

    particle_1: Optional[int] = None
    particle_2: Optional[int] = None

    def __post_init__(self):
        for value in (self.particle_1, self.particle_2):
            if value not in (None, 1, -1):
                raise ValueError(f"measured sign must be +1, -1 or None, got {value!r}")

    def sign(self, particle: int) -> Optional[int]:
        _check_particle(particle)
        return self.particle_1 if particle == 1 else self.particle_2


def _check_particle(particle: int) -> None:
    if particle not in (1, 2):
        raise ValueError(f"particle must be 1 or 2, got {particle!r}")


class LiouvilleSupport:
    """Finite weighted point set on the (E1, E2) energy plane.

    Points closer than ``ENERGY_TOL`` in both coordinates are merged and
    their weights added. Weights must be positive and sum to one. Points
    are kept in lexicographic order so equal supports compare and
    serialize identically.
    """

    __slots__ = ("_points",)

    def __init__(self, points: Iterable[tuple[tuple[float, float], float]]):
        merged: list[list] = []
        for (e1, e2), w in points:
            e1, e2, w = float(e1), float(e2), float(w)
            if not (math.isfinite(e1) and math.isfinite(e2) and math.isfinite(w)):
                raise ValueError("support coordinates and weights must be finite")
            if w <= 0:
                raise ValueError(f"support weights must be positive, got {w}")
            for entry in merged:
                if abs(entry[0] - e1) <= ENERGY_TOL and abs(entry[1] - e2) <= ENERGY_TOL:
                    entry[2] += w
                    break
            else:
                merged.append([e1, e2, w])
        if not merged:
            raise ValueError("a support needs at least one point")
        total = math.fsum(entry[2] for entry in merged)
        if abs(total - 1.0) > WEIGHT_TOL:
            raise ValueError(f"support weights must sum to 1, got {total!r}")
        merged.sort(key=lambda entry: (entry[0], entry[1]))
        self._points = tuple(((e1, e2), w) for e1, e2, w in merged)

    @property
    def points(self) -> tuple[tuple[tuple[float, float], float], ...]:
        return self._points

    def __len__(self) -> int:
        return len(self._points)

    def __iter__(self):
        return iter(self._points)

    def __repr__(self) -> str:
        body = ", ".join(f"(({e1:.6g}, {e2:.6g}), {w:.6g})" for (e1, e2), w in self._points)
        return f"LiouvilleSupport([{body}])"

    def weights(self) -> np.ndarray:
        return np.array([w for _, w in self._points])

    def coordinates(self) -> np.ndarray:
        return np.array([xy for xy, _ in self._points])

    def is_close(self, other: "LiouvilleSupport", tol: float = ENERGY_TOL) -> bool:
        """Set equality of supports with matching weights, within ``tol``."""
        if len(self) != len(other):
            return False
        for ((a1, a2), wa), ((b1, b2), wb) in zip(self._points, other._points):
            if abs(a1 - b1) > tol or abs(a2 - b2) > tol or abs(wa - wb) > tol:
                return False
        return True

    def marginal(self, particle: int) -> dict[float, float]:
        """Distribution of one particle's energy, keys merged within ``ENERGY_TOL``."""
        _check_particle(particle)
        out: dict[float, float] = {}
        for xy, w in self._points:
            e = xy[particle - 1]
            for key in out:
                if abs(key - e) <= ENERGY_TOL:
                    out[key] += w
                    break
            else:
                out[e] = w
        return dict(sorted(out.items()))

    def to_json(self) -> list[dict]:
        return [{"e1": e1, "e2": e2, "weight": w} for (e1, e2), w in self._points]


def rest_energy(params: BouncerParams) -> float:
    """Pre-kick energy ``sqrt(m² + p²)``."""
    if params.m <= 0:
        raise ValueError("mass must be positive")
    return math.hypot(params.m, params.p)


def kicked_energy(params: BouncerParams, sign: int) -> float:
    """Energy after the kick when the pre-kick momentum was ``sign * p``."""
    if sign not in (1, -1):
        raise ValueError(f"sign must be +1 or -1, got {sign!r}")
    if params.m <= 0:
        raise ValueError("mass must be positive")
    return math.hypot(params.m, params.k + sign * params.p)


def _axis(params: BouncerParams, slc: SpacelikeSlice, particle: int,
          measured: Optional[int]) -> list[tuple[float, float]]:
    if not is_before(slc, params.kick_event(particle)):
        if measured is not None:
            raise InconsistentRecordError(
                f"particle {particle} has a measured energy but its kick is not before the slice"
            )
        return [(rest_energy(params), 1.0)]
    if measured is not None:
        return [(kicked_energy(params, measured), 1.0)]
    return [(kicked_energy(params, +1), 0.5), (kicked_energy(params, -1), 0.5)]


def support_on_slice(params: BouncerParams, slc: SpacelikeSlice,
                     record: MeasurementRecord = MeasurementRecord()) -> LiouvilleSupport:
    """Liouville support that an observer on ``slc`` assigns, given ``record``.

    Each particle contributes ``{E0}`` if its kick is not yet in the
    slice's past, ``{E+, E-}`` at ½ each once kicked, or the single
    measured energy. The joint support is the product.
    """
    axis1 = _axis(params, slc, 1, record.particle_1)
    axis2 = _axis(params, slc, 2, record.particle_2)
    return LiouvilleSupport(((e1, e2), w1 * w2) for e1, w1 in axis1 for e2, w2 in axis2)


def collapse(support: LiouvilleSupport, particle: int, observed: float) -> LiouvilleSupport:
    """Condition ``support`` on particle ``particle`` having energy ``observed``."""
    _check_particle(particle)
    kept = [(xy, w) for xy, w in support if abs(xy[particle - 1] - observed) <= ENERGY_TOL]
    if not kept:
        raise ImpossibleOutcomeError(
            f"energy {observed!r} of particle {particle} is outside the support"
        )
    total = math.fsum(w for _, w in kept)
    return LiouvilleSupport((xy, w / total) for xy, w in kept)


def bouncer_position(params: BouncerParams, particle: int, t: float) -> float:
    """Rest-frame position of a bouncer at time ``t``, before its kick.

    The motion is a triangle wave of amplitude ``L`` and period ``4L/v``
    with ``v = p / E0``, starting at the segment center moving toward +x
    at ``t = 0``.
    """
    kick_t = params.kick_event(particle).t
    if t >= kick_t:
        raise OutOfModelError(
            f"t={t} is not before the kick of particle {particle} at t={kick_t}; "
            "post-kick motion is not modelled"
        )
    center = params.x_center(particle)
    half = params.segment_half_length
    v = params.p / rest_energy(params)
    if v == 0:
        return center
    phase = (v * t / half) % 4.0
    if phase <= 1.0:
        tri = phase
    elif phase <= 3.0:
        tri = 2.0 - phase
    else:
        tri = phase - 4.0
    return center + half * tri
