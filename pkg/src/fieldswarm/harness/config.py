"""Declarative scenario configuration and its plain-text (YAML) file form."""

from __future__ import annotations

from dataclasses import dataclass, field, fields, replace

import yaml

from ..engine import FaultConfig


class ConfigError(Exception):
    """Invalid scenario configuration; reported before any run starts."""


KNOWN_PROGRAMS = ("circle", "vshape", "line", "separation", "consensus", "rescue")


@dataclass(frozen=True)
class ScenarioConfig:
    """One experiment: topology, program, faults, duration, seeds, metrics."""

    name: str
    program: str
    grid_rows: int = 7
    grid_cols: int = 7
    placement: str = "lattice"  # lattice | uniform
    devices: int | None = None  # device count for uniform placement
    area_size: float = 1000.0
    comm_range: float = 200.0
    max_speed: float = 5.556  # 20 km/h
    duration: float = 600.0
    replications: int = 4
    seeds: tuple = ()
    message_loss: float = 0.0
    position_noise: float = 0.0
    kill_fraction: float = 0.0
    kill_time: float | None = None
    program_params: dict = field(default_factory=dict)
    metrics: tuple = ()
    epsilon: float = 5.0

    def __post_init__(self):
        if not self.seeds:
            object.__setattr__(self, "seeds", tuple(range(1, self.replications + 1)))
        object.__setattr__(self, "seeds", tuple(self.seeds))
        object.__setattr__(self, "metrics", tuple(self.metrics))
        self.validate()

    def validate(self) -> None:
        if self.program not in KNOWN_PROGRAMS:
            raise ConfigError(f"unknown program {self.program!r}")
        if self.replications != len(self.seeds):
            raise ConfigError("replications must equal the number of seeds")
        if self.placement not in ("lattice", "uniform"):
            raise ConfigError(f"unknown placement {self.placement!r}")
        if self.placement == "uniform" and not self.devices:
            raise ConfigError("uniform placement needs a device count")
        for label, value in (
            ("area_size", self.area_size),
            ("comm_range", self.comm_range),
            ("max_speed", self.max_speed),
            ("duration", self.duration),
            ("epsilon", self.epsilon),
        ):
            if value <= 0:
                raise ConfigError(f"{label} must be positive")
        if self.placement == "lattice" and (self.grid_rows < 1 or self.grid_cols < 1):
            raise ConfigError("lattice needs at least one row and column")
        try:
            self.faults()
        except ValueError as exc:
            raise ConfigError(str(exc)) from None

    def faults(self) -> FaultConfig:
        return FaultConfig(
            message_loss=self.message_loss,
            position_noise=self.position_noise,
            kill_fraction=self.kill_fraction,
            kill_time=self.kill_time,
        )

    def with_overrides(self, **kwargs) -> "ScenarioConfig":
        kwargs = {k: v for k, v in kwargs.items() if v is not None}
        if "seeds" in kwargs:
            kwargs.setdefault("replications", len(kwargs["seeds"]))
        return replace(self, **kwargs)


_FIELD_NAMES = {f.name for f in fields(ScenarioConfig)}


def load_scenario_file(path: str) -> ScenarioConfig:
    """Parse a scenario file whose keys are exactly the config field names."""
    with open(path, "r", encoding="utf-8") as handle:
        try:
            raw = yaml.safe_load(handle)
        except yaml.YAMLError as exc:
            raise ConfigError(f"cannot parse {path}: {exc}") from None
    if not isinstance(raw, dict):
        raise ConfigError(f"{path} must contain a mapping")
    unknown = set(raw) - _FIELD_NAMES
    if unknown:
        raise ConfigError(f"unknown config keys: {sorted(unknown)}")
    if "name" not in raw or "program" not in raw:
        raise ConfigError("scenario files must set name and program")
    if "seeds" in raw:
        raw["seeds"] = tuple(raw["seeds"])
    if "metrics" in raw:
        raw["metrics"] = tuple(raw["metrics"])
    try:
        return ScenarioConfig(**raw)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None
