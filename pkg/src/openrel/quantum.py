"""Two unentangled spins measured along y at spacelike-separated events.

Amplitudes are stored over the product basis ``|z+z+>, |z+z->, |z-z+>, |z-z->``
with subsystem 1 as the left tensor factor. Spin operators are always
those of the rest frame of the preparation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import InconsistentBranchError
from .spacetime import FourVector, SpacelikeSlice, is_before

__all__ = [
    "SIGMA",
    "KETS",
    "TwoSpinState",
    "OutcomeBranch",
    "ObserverSlice",
    "product_state",
    "prepare_initial",
    "measure_sigma_y",
    "project_sigma_y",
    "sigma_y_probabilities",
    "description_on_slice",
    "pauli_expectation",
]

NORM_TOL = 1e-12
RANK_TOL = 1e-9
RAY_TOL = 1e-9

SIGMA = {
    "x": np.array([[0, 1], [1, 0]], dtype=complex),
    "y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "z": np.array([[1, 0], [0, -1]], dtype=complex),
}

_S = 1 / np.sqrt(2)
KETS = {
    "z+": np.array([1, 0], dtype=complex),
    "z-": np.array([0, 1], dtype=complex),
    "x+": np.array([_S, _S], dtype=complex),
    "x-": np.array([_S, -_S], dtype=complex),
    "y+": np.array([_S, 1j * _S], dtype=complex),
    "y-": np.array([_S, -1j * _S], dtype=complex),
}


class TwoSpinState:
    """Normalized two-spin state vector.

    Equality is ray equality: ``|<phi|psi>| = 1`` within 1e-9.
    """

    __slots__ = ("_amps",)

    def __init__(self, amplitudes):
        amps = np.array(amplitudes, dtype=complex).reshape(-1)
        if amps.shape != (4,):
            raise ValueError(f"expected 4 amplitudes, got shape {amps.shape}")
        if not np.all(np.isfinite(amps)):
            raise ValueError("amplitudes must be finite")
        norm = np.linalg.norm(amps)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state must be normalized, got norm {norm!r}")
        amps.setflags(write=False)
        self._amps = amps

    @property
    def amplitudes(self) -> np.ndarray:
        return self._amps

    def __repr__(self) -> str:
        return f"TwoSpinState({np.array2string(self._amps, precision=4)})"

    def __eq__(self, other):
        if not isinstance(other, TwoSpinState):
            return NotImplemented
        return self.same_ray(other)

    __hash__ = None

    def overlap(self, other: "TwoSpinState") -> complex:
        return complex(np.vdot(self._amps, other._amps))

    def same_ray(self, other: "TwoSpinState", tol: float = RAY_TOL) -> bool:
        return abs(abs(self.overlap(other)) - 1.0) <= tol

    def is_product(self, tol: float = RANK_TOL) -> bool:
        """Rank-1 test on the 2x2 amplitude matrix."""
        s = np.linalg.svd(self._amps.reshape(2, 2), compute_uv=False)
        return bool(s[1] <= tol)

    def to_json(self) -> list[list[float]]:
        return [[float(a.real), float(a.imag)] for a in self._amps]


def product_state(ket1, ket2) -> TwoSpinState:
    """``ket1 ⊗ ket2``; kets may be arrays or keys of ``KETS`` such as ``"y+"``."""
    k1 = KETS[ket1] if isinstance(ket1, str) else np.asarray(ket1, dtype=complex)
    k2 = KETS[ket2] if isinstance(ket2, str) else np.asarray(ket2, dtype=complex)
    return TwoSpinState(np.kron(k1, k2))


def prepare_initial() -> TwoSpinState:
    """Both spins in the sigma_x = +1 eigenstate."""
    return product_state("x+", "x+")


def _local(op: np.ndarray, subsystem: int) -> np.ndarray:
    if subsystem == 1:
        return np.kron(op, np.eye(2))
    if subsystem == 2:
        return np.kron(np.eye(2), op)
    raise ValueError(f"subsystem must be 1 or 2, got {subsystem!r}")


_PROJECTORS_Y = {
    (subsystem, outcome): _local((np.eye(2) + outcome * SIGMA["y"]) / 2, subsystem)
    for subsystem in (1, 2) for outcome in (1, -1)
}


def _projector_y(subsystem: int, outcome: int) -> np.ndarray:
    try:
        return _PROJECTORS_Y[subsystem, outcome]
    except KeyError:
        raise ValueError(f"subsystem must be 1 or 2 and outcome ±1, got {subsystem!r}, {outcome!r}") from None


def sigma_y_probabilities(state: TwoSpinState, subsystem: int) -> dict[int, float]:
    """Born probabilities of sigma_y = +1 and -1 on one subsystem."""
    out = {}
    for outcome in (1, -1):
        projected = _projector_y(subsystem, outcome) @ state.amplitudes
        out[outcome] = float(np.real(np.vdot(projected, projected)))
    return out


def project_sigma_y(state: TwoSpinState, subsystem: int, outcome: int
                    ) -> tuple[TwoSpinState, float]:
    """Post-measurement state and Born weight for a given sigma_y outcome."""
    if outcome not in (1, -1):
        raise ValueError(f"outcome must be +1 or -1, got {outcome!r}")
    projected = _projector_y(subsystem, outcome) @ state.amplitudes
    prob = float(np.real(np.vdot(projected, projected)))
    if prob <= 0:
        raise ValueError(f"sigma_y = {outcome:+d} has zero probability on subsystem {subsystem}")
    return TwoSpinState(projected / np.sqrt(prob)), prob


def measure_sigma_y(state: TwoSpinState, subsystem: int,
                    rng: np.random.Generator | int | None = None
                    ) -> tuple[int, TwoSpinState, float]:
    """Projective sigma_y measurement on one subsystem.

    Parameters
    ----------
    state : TwoSpinState
    subsystem : {1, 2}
    rng : numpy Generator or seed
        Consumes exactly one uniform draw. Pass the same ``Generator``
        across calls for a reproducible sequence.

    Returns
    -------
    outcome : int
        +1 or -1.
    post_state : TwoSpinState
        Renormalized projection onto the observed eigenspace.
    probability : float
        Born weight of the observed outcome.
    """
    rng = np.random.default_rng(rng)
    probs = sigma_y_probabilities(state, subsystem)
    outcome = 1 if rng.random() < probs[1] else -1
    if probs[outcome] <= 0:
        raise RuntimeError("sampled a zero-probability measurement outcome")
    post, prob = project_sigma_y(state, subsystem, outcome)
    return outcome, post, prob


@dataclass(frozen=True)
class OutcomeBranch:
    """Alice's (``a``) and Bob's (``b``) sigma_y results; None means not measured yet."""

    a: Optional[int] = None
    b: Optional[int] = None

    def __post_init__(self):
        for value in (self.a, self.b):
            if value not in (None, 1, -1):
                raise ValueError(f"outcome must be +1, -1 or None, got {value!r}")

    def outcome(self, subsystem: int) -> Optional[int]:
        if subsystem not in (1, 2):
            raise ValueError(f"subsystem must be 1 or 2, got {subsystem!r}")
        return self.a if subsystem == 1 else self.b


@dataclass(frozen=True)
class ObserverSlice:
    """An observer's simultaneity hyperplane ``t' = tau`` at rapidity ``chi``."""

    observer: str
    tau: float = 0.0
    chi: float = 0.0

    @property
    def slice(self) -> SpacelikeSlice:
        return SpacelikeSlice(self.chi, self.tau)


def description_on_slice(slc: ObserverSlice | SpacelikeSlice, branch: OutcomeBranch,
                         measurement_events: Sequence[FourVector]) -> TwoSpinState:
    """State assigned on a slice, given outcomes of the measurements in its past.

    A subsystem whose measurement precedes the slice is in the sigma_y
    eigenstate named by the branch. The other is still in its prepared
    sigma_x = +1 state.
    """
    hyperplane = slc.slice if isinstance(slc, ObserverSlice) else slc
    if len(measurement_events) != 2:
        raise ValueError("need exactly two measurement events")
    kets = []
    for subsystem, event in zip((1, 2), measurement_events):
        before = is_before(hyperplane, event)
        result = branch.outcome(subsystem)
        if before and result is None:
            raise InconsistentBranchError(
                f"measurement {subsystem} precedes the slice but the branch has no outcome for it"
            )
        if not before and result is not None:
            raise InconsistentBranchError(
                f"measurement {subsystem} is not before the slice but the branch assigns it {result:+d}"
            )
        kets.append("x+" if result is None else ("y+" if result == 1 else "y-"))
    return product_state(*kets)


def pauli_expectation(state: TwoSpinState, subsystem: int, axis: str) -> float:
    """``<sigma_axis>`` on one subsystem."""
    op = _local(SIGMA[axis], subsystem)
    return float(np.real(np.vdot(state.amplitudes, op @ state.amplitudes)))
