"""Scenario files: one TOML document describing a full run.

Example (the built-in default)::

    # natural units: c = 1; energies/masses/momenta share one unit,
    # times/lengths another
    seed = 1998
    output_dir = "out"

    [classical]
    m = 3.0
    p = 4.0
    k = 4.0
    segment_half_length = 1.0
    x_center_1 = -1.0
    x_center_2 = 1.0
    kick_event_1 = [0.0, -1.0, 0.0, 0.0]
    kick_event_2 = [0.0, 1.0, 0.0, 0.0]

    [quantum]
    event_a = [0.0, -1.0, 0.0, 0.0]
    event_b = [0.0, 1.0, 0.0, 0.0]

    [[observers]]
    name = "alice"
    rapidity = -0.5
    ...

    [[slices]]
    observer = "alice"
    tau = 0.0
    ...

    [bell]
    a = [0.0, 0.0, 1.0]
    ...

Unknown keys anywhere are rejected. Observers named ``alice`` and
``bob`` are required; the checker uses their ``tau = 0`` slices.
"""

from __future__ import annotations

import math
import sys
from dataclasses import dataclass, field, fields, replace
from pathlib import Path

import tomli_w

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

from .bell import AnalyzerSettings, in_plane
from .classical import BouncerParams
from .errors import ScenarioError
from .quantum import ObserverSlice
from .spacetime import FourVector

__all__ = [
    "ConfigError",
    "ClassicalConfig",
    "QuantumConfig",
    "Observer",
    "SliceSpec",
    "BellConfig",
    "ScenarioConfig",
    "load_config",
    "parse_config",
    "dumps_config",
]


class ConfigError(ScenarioError):
    """The scenario file is malformed or internally inconsistent."""


def _vec(values, n: int, name: str) -> list[float]:
    try:
        out = [float(v) for v in values]
    except (TypeError, ValueError):
        raise ConfigError(f"{name} must be a list of numbers") from None
    if len(out) != n:
        raise ConfigError(f"{name} must have {n} components, got {len(out)}")
    if not all(math.isfinite(v) for v in out):
        raise ConfigError(f"{name} must be finite")
    return out


def _build(cls, data, where: str):
    if not isinstance(data, dict):
        raise ConfigError(f"[{where}] must be a table")
    known = {f.name for f in fields(cls)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown key(s) in [{where}]: {', '.join(unknown)}")
    try:
        return cls(**data)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"[{where}]: {exc}") from None


def _float(value, name: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(f"{name} must be a number, got {value!r}")
    value = float(value)
    if not math.isfinite(value):
        raise ConfigError(f"{name} must be finite")
    return value


@dataclass
class ClassicalConfig:
    m: float = 3.0
    p: float = 4.0
    k: float = 4.0
    segment_half_length: float = 1.0
    x_center_1: float = -1.0
    x_center_2: float = 1.0
    kick_event_1: list = field(default_factory=lambda: [0.0, -1.0, 0.0, 0.0])
    kick_event_2: list = field(default_factory=lambda: [0.0, 1.0, 0.0, 0.0])

    def __post_init__(self):
        for name in ("m", "p", "k", "segment_half_length", "x_center_1", "x_center_2"):
            setattr(self, name, _float(getattr(self, name), f"classical.{name}"))
        self.kick_event_1 = _vec(self.kick_event_1, 4, "classical.kick_event_1")
        self.kick_event_2 = _vec(self.kick_event_2, 4, "classical.kick_event_2")

    def params(self) -> BouncerParams:
        return BouncerParams(
            m=self.m, p=self.p, k=self.k,
            segment_half_length=self.segment_half_length,
            x_center_1=self.x_center_1, x_center_2=self.x_center_2,
            kick_event_1=FourVector(*self.kick_event_1),
            kick_event_2=FourVector(*self.kick_event_2),
        )


@dataclass
class QuantumConfig:
    event_a: list = field(default_factory=lambda: [0.0, -1.0, 0.0, 0.0])
    event_b: list = field(default_factory=lambda: [0.0, 1.0, 0.0, 0.0])

    def __post_init__(self):
        self.event_a = _vec(self.event_a, 4, "quantum.event_a")
        self.event_b = _vec(self.event_b, 4, "quantum.event_b")

    def events(self) -> tuple[FourVector, FourVector]:
        return FourVector(*self.event_a), FourVector(*self.event_b)


@dataclass
class Observer:
    name: str
    rapidity: float

    def __post_init__(self):
        if not isinstance(self.name, str) or not self.name:
            raise ConfigError("observer name must be a nonempty string")
        self.rapidity = _float(self.rapidity, f"rapidity of {self.name}")


@dataclass
class SliceSpec:
    observer: str
    tau: float

    def __post_init__(self):
        self.tau = _float(self.tau, "slice tau")


@dataclass
class BellConfig:
    a: list = field(default_factory=lambda: in_plane(0.0).tolist())
    a_prime: list = field(default_factory=lambda: in_plane(90.0).tolist())
    b: list = field(default_factory=lambda: in_plane(45.0).tolist())
    b_prime: list = field(default_factory=lambda: in_plane(-45.0).tolist())
    n_samples: int = 100_000
    scan_quadruples: int = 10_000

    def __post_init__(self):
        for name in ("a", "a_prime", "b", "b_prime"):
            setattr(self, name, _vec(getattr(self, name), 3, f"bell.{name}"))
        for name in ("n_samples", "scan_quadruples"):
            value = getattr(self, name)
            if isinstance(value, bool) or not isinstance(value, int) or value < 1:
                raise ConfigError(f"bell.{name} must be a positive integer, got {value!r}")

    def settings(self) -> AnalyzerSettings:
        try:
            return AnalyzerSettings(self.a, self.a_prime, self.b, self.b_prime)
        except ValueError as exc:
            raise ConfigError(f"[bell]: {exc}") from None


def _default_observers() -> list[Observer]:
    return [Observer("alice", -0.5), Observer("bob", 0.5), Observer("magician", 0.0)]


def _default_slices() -> list[SliceSpec]:
    return [SliceSpec("alice", 0.0), SliceSpec("bob", 0.0),
            SliceSpec("magician", -2.0), SliceSpec("magician", 2.0)]


@dataclass
class ScenarioConfig:
    seed: int = 1998
    output_dir: str = "out"
    classical: ClassicalConfig = field(default_factory=ClassicalConfig)
    quantum: QuantumConfig = field(default_factory=QuantumConfig)
    observers: list = field(default_factory=_default_observers)
    slices: list = field(default_factory=_default_slices)
    bell: BellConfig = field(default_factory=BellConfig)

    def __post_init__(self):
        if isinstance(self.seed, bool) or not isinstance(self.seed, int) or self.seed < 0:
            raise ConfigError(f"seed must be a nonnegative integer, got {self.seed!r}")
        if not isinstance(self.output_dir, str):
            raise ConfigError("output_dir must be a string")
        names = [o.name for o in self.observers]
        if len(set(names)) != len(names):
            raise ConfigError(f"duplicate observer names: {names}")
        for required in ("alice", "bob"):
            if required not in names:
                raise ConfigError(f"an observer named {required!r} is required")
        for slc in self.slices:
            if slc.observer not in names:
                raise ConfigError(f"slice refers to unknown observer {slc.observer!r}")

    def observer(self, name: str) -> Observer:
        for obs in self.observers:
            if obs.name == name:
                return obs
        raise KeyError(name)

    def observer_slice(self, name: str, tau: float = 0.0) -> ObserverSlice:
        return ObserverSlice(name, tau, self.observer(name).rapidity)

    def observer_slices(self) -> list[ObserverSlice]:
        return [self.observer_slice(s.observer, s.tau) for s in self.slices]

    def with_overrides(self, seed: int | None = None, output_dir: str | None = None
                       ) -> "ScenarioConfig":
        changes = {}
        if seed is not None:
            changes["seed"] = seed
        if output_dir is not None:
            changes["output_dir"] = output_dir
        return replace(self, **changes)

    def to_dict(self) -> dict:
        return {
            "seed": self.seed,
            "output_dir": self.output_dir,
            "classical": vars(self.classical).copy(),
            "quantum": vars(self.quantum).copy(),
            "observers": [vars(o).copy() for o in self.observers],
            "slices": [vars(s).copy() for s in self.slices],
            "bell": vars(self.bell).copy(),
        }


def parse_config(data: dict) -> ScenarioConfig:
    """Build a validated config from a parsed TOML mapping."""
    known = {f.name for f in fields(ScenarioConfig)}
    unknown = sorted(set(data) - known)
    if unknown:
        raise ConfigError(f"unknown top-level key(s): {', '.join(unknown)}")
    kwargs = {k: data[k] for k in ("seed", "output_dir") if k in data}
    if "classical" in data:
        kwargs["classical"] = _build(ClassicalConfig, data["classical"], "classical")
    if "quantum" in data:
        kwargs["quantum"] = _build(QuantumConfig, data["quantum"], "quantum")
    if "bell" in data:
        kwargs["bell"] = _build(BellConfig, data["bell"], "bell")
    for key, cls in (("observers", Observer), ("slices", SliceSpec)):
        if key in data:
            if not isinstance(data[key], list):
                raise ConfigError(f"{key} must be an array of tables")
            kwargs[key] = [_build(cls, item, key) for item in data[key]]
    return ScenarioConfig(**kwargs)


def load_config(path: str | Path | None) -> ScenarioConfig:
    """Read a scenario file; ``None`` gives the built-in default."""
    if path is None:
        return ScenarioConfig()
    try:
        with open(path, "rb") as fh:
            data = tomllib.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read config {path}: {exc.strerror}") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"{path}: {exc}") from None
    return parse_config(data)


def dumps_config(config: ScenarioConfig) -> str:
    header = "# natural units: c = 1\n"
    return header + tomli_w.dumps(config.to_dict())
