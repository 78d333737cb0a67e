"""CHSH correlations: isotropic classical fragments versus the spin singlet.

The classical model is a pair of fragments carrying opposite angular
momenta ``λ`` and ``-λ`` with ``λ`` isotropic. Each analyzer reads the
sign of the projection on its axis. The quantum model evaluates
``<ψ⁻| σ·a ⊗ σ·b |ψ⁻>`` on the explicit singlet vector.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .quantum import SIGMA

__all__ = [
    "AnalyzerSettings",
    "CorrelationEstimate",
    "MODELS",
    "CHUNK_SIZE",
    "SINGLET",
    "sample_sphere",
    "classical_correlation_analytic",
    "classical_correlation_mc",
    "quantum_singlet_correlation",
    "correlations",
    "chsh",
    "classical_chsh_bound_scan",
]

UNIT_TOL = 1e-12
CHUNK_SIZE = 1 << 16
MODELS = ("classical-analytic", "classical-mc", "quantum")

SINGLET = np.array([0, 1, -1, 0], dtype=complex) / np.sqrt(2)


def _vector(v, name: str = "vector") -> np.ndarray:
    arr = np.asarray(v, dtype=float).reshape(-1)
    if arr.shape != (3,):
        raise ValueError(f"{name} must have 3 components, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} must be finite")
    if not np.any(arr):
        raise ValueError(f"{name} must be nonzero")
    return arr


def _unit(v, name: str = "vector") -> np.ndarray:
    arr = _vector(v, name)
    return arr / np.linalg.norm(arr)


def _angle(a, b) -> float:
    a, b = _vector(a, "a"), _vector(b, "b")
    # atan2 keeps full precision near 0 and pi where arccos does not
    return math.atan2(np.linalg.norm(np.cross(a, b)), float(np.dot(a, b)))


def in_plane(degrees: float) -> np.ndarray:
    """Unit vector at ``degrees`` from +z toward +x in the x-z plane."""
    phi = math.radians(degrees)
    return np.array([math.sin(phi), 0.0, math.cos(phi)])


@dataclass(frozen=True)
class AnalyzerSettings:
    a: np.ndarray
    a_prime: np.ndarray
    b: np.ndarray
    b_prime: np.ndarray

    def __post_init__(self):
        for name in ("a", "a_prime", "b", "b_prime"):
            vec = _vector(getattr(self, name), name)
            if abs(np.linalg.norm(vec) - 1.0) > UNIT_TOL:
                raise ValueError(f"{name} must be a unit vector, got norm {np.linalg.norm(vec)!r}")
            object.__setattr__(self, name, vec)

    @classmethod
    def from_angles(cls, a: float, a_prime: float, b: float, b_prime: float) -> "AnalyzerSettings":
        """Coplanar settings given in degrees (see :func:`in_plane`)."""
        return cls(in_plane(a), in_plane(a_prime), in_plane(b), in_plane(b_prime))

    @classmethod
    def standard(cls) -> "AnalyzerSettings":
        """The quadruple at which the singlet reaches ``|S| = 2√2``.

        With ``S = E(a,b) + E(a,b') + E(a',b) - E(a',b')`` this is
        a = 0°, a' = 90°, b = 45°, b' = -45°.
        """
        return cls.from_angles(0.0, 90.0, 45.0, -45.0)

    def pairs(self):
        """The four (left, right) setting pairs in CHSH order."""
        return ((self.a, self.b), (self.a, self.b_prime),
                (self.a_prime, self.b), (self.a_prime, self.b_prime))

    def to_json(self) -> dict:
        return {name: [float(c) for c in getattr(self, name)]
                for name in ("a", "a_prime", "b", "b_prime")}


@dataclass(frozen=True)
class CorrelationEstimate:
    value: float
    standard_error: float
    n_samples: int
    standard_error_defined: bool = True

    def to_json(self) -> dict:
        return {"value": self.value, "standard_error": self.standard_error,
                "n_samples": self.n_samples,
                "standard_error_defined": self.standard_error_defined}


def sample_sphere(n: int, rng: np.random.Generator) -> np.ndarray:
    """``n`` isotropic unit vectors: uniform ``z`` in [-1, 1], uniform azimuth."""
    z = rng.uniform(-1.0, 1.0, n)
    phi = rng.uniform(0.0, 2.0 * np.pi, n)
    r = np.sqrt(1.0 - z * z)
    return np.column_stack([r * np.cos(phi), r * np.sin(phi), z])


def _sign(x: np.ndarray) -> np.ndarray:
    # ties (measure zero) read as +1 on both sides
    return np.where(x >= 0.0, 1.0, -1.0)


def classical_correlation_analytic(a, b) -> float:
    """``-1 + 2θ/π`` for analyzers an angle ``θ`` apart."""
    return -1.0 + 2.0 * _angle(a, b) / math.pi


def _chunk_stats(a: np.ndarray, b: np.ndarray, seed_seq: np.random.SeedSequence,
                 size: int) -> tuple[float, float]:
    rng = np.random.default_rng(seed_seq)
    lam = sample_sphere(size, rng)
    prod = _sign(lam @ a) * -_sign(lam @ b)
    return float(prod.sum()), float((prod * prod).sum())


def classical_correlation_mc(a, b, n_samples: int, seed: int, workers: int = 1
                             ) -> CorrelationEstimate:
    """Monte Carlo estimate of the classical correlation.

    Samples are drawn in chunks of ``CHUNK_SIZE``, each from its own child
    of ``SeedSequence(seed)``, so the estimate is bit-identical for any
    ``workers``.
    """
    if n_samples < 1:
        raise ValueError(f"n_samples must be at least 1, got {n_samples}")
    a, b = _unit(a, "a"), _unit(b, "b")
    n_chunks = -(-n_samples // CHUNK_SIZE)
    children = np.random.SeedSequence(seed).spawn(n_chunks)
    sizes = [CHUNK_SIZE] * (n_chunks - 1) + [n_samples - CHUNK_SIZE * (n_chunks - 1)]
    jobs = list(zip(children, sizes))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            stats = list(pool.map(lambda job: _chunk_stats(a, b, *job), jobs))
    else:
        stats = [_chunk_stats(a, b, *job) for job in jobs]
    total = math.fsum(s for s, _ in stats)
    total_sq = math.fsum(q for _, q in stats)
    mean = total / n_samples
    if n_samples == 1:
        return CorrelationEstimate(mean, 0.0, 1, standard_error_defined=False)
    var = max(total_sq - n_samples * mean * mean, 0.0) / (n_samples - 1)
    return CorrelationEstimate(mean, math.sqrt(var / n_samples), n_samples)


def quantum_singlet_correlation(a, b) -> float:
    """Spin correlation of the singlet for analyzer directions ``a`` and ``b``."""
    a, b = _unit(a, "a"), _unit(b, "b")
    sa = sum(c * SIGMA[k] for c, k in zip(a, "xyz"))
    sb = sum(c * SIGMA[k] for c, k in zip(b, "xyz"))
    return float(np.real(np.vdot(SINGLET, np.kron(sa, sb) @ SINGLET)))


def correlations(settings: AnalyzerSettings, model: str, n_samples: int = 100_000,
                 seed: int = 0) -> list[float]:
    """The four correlations entering S, in CHSH order.

    For ``classical-mc`` the pair index is mixed into the seed so the
    four estimates use independent streams.
    """
    if model == "classical-analytic":
        return [classical_correlation_analytic(x, y) for x, y in settings.pairs()]
    if model == "quantum":
        return [quantum_singlet_correlation(x, y) for x, y in settings.pairs()]
    if model == "classical-mc":
        return [classical_correlation_mc(x, y, n_samples, [seed, i]).value
                for i, (x, y) in enumerate(settings.pairs())]
    raise ValueError(f"model must be one of {MODELS}, got {model!r}")


def chsh(settings: AnalyzerSettings, model: str = "quantum", n_samples: int = 100_000,
         seed: int = 0) -> float:
    """``S = E(a,b) + E(a,b') + E(a',b) - E(a',b')``."""
    e_ab, e_abp, e_apb, e_apbp = correlations(settings, model, n_samples, seed)
    return e_ab + e_abp + e_apb - e_apbp


def classical_chsh_bound_scan(n_settings: int, seed: int) -> float:
    """Largest classical ``|S|`` over ``n_settings`` random quadruples."""
    if n_settings < 1:
        raise ValueError(f"n_settings must be at least 1, got {n_settings}")
    rng = np.random.default_rng(seed)
    best = 0.0
    for _ in range(n_settings):
        a, a_p, b, b_p = sample_sphere(4, rng)
        settings = AnalyzerSettings(_unit(a), _unit(a_p), _unit(b), _unit(b_p))
        best = max(best, abs(chsh(settings, "classical-analytic")))
    return best
