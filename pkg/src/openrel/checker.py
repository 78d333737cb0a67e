"""Decide whether any outcome-independent map relates two observers' descriptions.

A description table has one row per joint outcome branch, holding what
the "left" observer and the "right" observer assign on their respective
slices. If two rows share a left description but differ on the right,
no function (linear or not) can turn left descriptions into right ones.
The least-squares fit quantifies how badly the best unconstrained linear
map fails.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Optional, Union

import numpy as np

from .classical import ENERGY_TOL, BouncerParams, LiouvilleSupport, MeasurementRecord, support_on_slice
from .errors import InvalidScenarioError
from .quantum import ObserverSlice, OutcomeBranch, TwoSpinState, description_on_slice
from .spacetime import CausalClass, FourVector, SpacelikeSlice, causal_relation, is_before

__all__ = [
    "Row",
    "DescriptionTable",
    "FunctionVerdict",
    "LinearFit",
    "CheckVerdict",
    "build_quantum_table",
    "build_classical_table",
    "check_function_existence",
    "fit_best_linear_map",
    "check_table",
    "BRANCHES",
    "EQUALITY_TOL",
]

EQUALITY_TOL = 1e-9
BRANCHES = ((1, 1), (1, -1), (-1, 1), (-1, -1))

Description = Union[TwoSpinState, LiouvilleSupport]


@dataclass(frozen=True)
class Row:
    branch: tuple[int, int]
    left: Description
    right: Description


@dataclass(frozen=True)
class DescriptionTable:
    rows: tuple[Row, ...]
    kind: str

    def __post_init__(self):
        object.__setattr__(self, "rows", tuple(self.rows))
        expected = {"quantum": TwoSpinState, "classical": LiouvilleSupport}.get(self.kind)
        if expected is None:
            raise ValueError(f"kind must be 'quantum' or 'classical', got {self.kind!r}")
        for row in self.rows:
            if not (isinstance(row.left, expected) and isinstance(row.right, expected)):
                raise ValueError(f"all descriptions in a {self.kind} table must be {expected.__name__}")

    def __len__(self) -> int:
        return len(self.rows)


@dataclass(frozen=True)
class FunctionVerdict:
    function_exists: bool
    witness: Optional[tuple[int, int]] = None


@dataclass(frozen=True)
class LinearFit:
    residual: float
    per_row_errors: tuple[float, ...]
    matrix: np.ndarray = field(repr=False)


@dataclass(frozen=True)
class CheckVerdict:
    function_exists: bool
    witness: Optional[tuple[int, int]]
    best_linear_residual: float
    per_row_errors: tuple[float, ...]

    def to_json(self) -> dict:
        return {
            "function_exists": self.function_exists,
            "witness": list(self.witness) if self.witness is not None else None,
            "best_linear_residual": self.best_linear_residual,
            "per_row_errors": list(self.per_row_errors),
        }


def _as_slice(slc) -> SpacelikeSlice:
    return slc.slice if isinstance(slc, ObserverSlice) else slc


def _validate_crossed_orderings(events: tuple[FourVector, FourVector], left: SpacelikeSlice,
                   right: SpacelikeSlice, what: str) -> None:
    relation = causal_relation(*events)
    if relation is not CausalClass.SPACELIKE:
        raise InvalidScenarioError(f"{what} events must be spacelike-separated, got {relation.value}")
    if not (is_before(left, events[0]) and not is_before(left, events[1])):
        raise InvalidScenarioError(
            f"left slice must lie after {what} event 1 and not after {what} event 2"
        )
    if not (is_before(right, events[1]) and not is_before(right, events[0])):
        raise InvalidScenarioError(
            f"right slice must lie after {what} event 2 and not after {what} event 1"
        )


def build_quantum_table(measurement_events, alice_slice, bob_slice) -> DescriptionTable:
    """Alice's and Bob's state assignments over all four sigma_y branches."""
    events = tuple(measurement_events)
    left, right = _as_slice(alice_slice), _as_slice(bob_slice)
    _validate_crossed_orderings(events, left, right, "measurement")
    rows = []
    for a, b in BRANCHES:
        rows.append(Row(
            (a, b),
            description_on_slice(left, OutcomeBranch(a=a), events),
            description_on_slice(right, OutcomeBranch(b=b), events),
        ))
    return DescriptionTable(tuple(rows), "quantum")


def build_classical_table(params: BouncerParams, alice_slice, bob_slice) -> DescriptionTable:
    """Alice's and Bob's measured Liouville supports over all four sign branches."""
    events = (params.kick_event_1, params.kick_event_2)
    left, right = _as_slice(alice_slice), _as_slice(bob_slice)
    _validate_crossed_orderings(events, left, right, "kick")
    rows = []
    for s1, s2 in BRANCHES:
        rows.append(Row(
            (s1, s2),
            support_on_slice(params, left, MeasurementRecord(particle_1=s1)),
            support_on_slice(params, right, MeasurementRecord(particle_2=s2)),
        ))
    return DescriptionTable(tuple(rows), "classical")


def _same(d1: Description, d2: Description) -> bool:
    if isinstance(d1, TwoSpinState):
        return d1.same_ray(d2, EQUALITY_TOL)
    return d1.is_close(d2, EQUALITY_TOL)


def check_function_existence(table: DescriptionTable) -> FunctionVerdict:
    """Look for two rows with equal left and unequal right descriptions.

    The first such pair in row order is returned as the witness.
    """
    for i, j in itertools.combinations(range(len(table.rows)), 2):
        ri, rj = table.rows[i], table.rows[j]
        if _same(ri.left, rj.left) and not _same(ri.right, rj.right):
            return FunctionVerdict(False, (i, j))
    return FunctionVerdict(True, None)


def embed(table: DescriptionTable) -> tuple[np.ndarray, np.ndarray]:
    """Column-stacked left and right description vectors.

    Quantum rows use their amplitude vectors. Classical supports become
    probability vectors over the sorted union of every support point in
    the table.
    """
    if table.kind == "quantum":
        lefts = np.column_stack([r.left.amplitudes for r in table.rows])
        rights = np.column_stack([r.right.amplitudes for r in table.rows])
        return lefts, rights
    points: list[tuple[float, float]] = []
    for row in table.rows:
        for support in (row.left, row.right):
            for xy, _ in support:
                if not any(abs(xy[0] - q[0]) <= ENERGY_TOL and abs(xy[1] - q[1]) <= ENERGY_TOL
                           for q in points):
                    points.append(xy)
    points.sort()

    def vec(support: LiouvilleSupport) -> np.ndarray:
        out = np.zeros(len(points))
        for xy, w in support:
            idx = next(n for n, q in enumerate(points)
                       if abs(xy[0] - q[0]) <= ENERGY_TOL and abs(xy[1] - q[1]) <= ENERGY_TOL)
            out[idx] += w
        return out

    lefts = np.column_stack([vec(r.left) for r in table.rows])
    rights = np.column_stack([vec(r.right) for r in table.rows])
    return lefts, rights


def fit_best_linear_map(table: DescriptionTable) -> LinearFit:
    """Least-squares ``T`` minimizing ``sum_rows ||T left - right||²``.

    ``T`` is an unconstrained (complex) matrix. The reported residual is
    the minimized sum of squares; ``per_row_errors`` are the norms
    ``||T left_i - right_i||``.
    """
    if len(table) == 0:
        raise ValueError("cannot fit a map to an empty table")
    lefts, rights = embed(table)
    # T L = R  <=>  L^T T^T = R^T
    t_transpose, *_ = np.linalg.lstsq(lefts.T, rights.T, rcond=None)
    matrix = t_transpose.T
    errors = np.linalg.norm(matrix @ lefts - rights, axis=0)
    return LinearFit(float(np.sum(errors ** 2)), tuple(float(e) for e in errors), matrix)


def check_table(table: DescriptionTable) -> CheckVerdict:
    exists = check_function_existence(table)
    fit = fit_best_linear_map(table)
    return CheckVerdict(exists.function_exists, exists.witness, fit.residual, fit.per_row_errors)
