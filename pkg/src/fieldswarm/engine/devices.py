"""World state: devices, faults, actuation goals."""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from ..exports import ExportTree
from ..vectors import Vec3

ROUND_BASED = "round-based"
LONG_STANDING = "long-standing"


@dataclass(frozen=True, slots=True)
class ActuationGoal:
    """Velocity goal plus its validity modality."""

    velocity: Vec3
    modality: str = ROUND_BASED

    def __post_init__(self):
        if self.modality not in (ROUND_BASED, LONG_STANDING):
            raise ValueError(f"unknown actuation modality {self.modality!r}")


@dataclass(frozen=True, slots=True)
class FaultConfig:
    """Adversarial knobs: loss probability D, position noise std P,
    kill fraction K at time T_k."""

    message_loss: float = 0.0
    position_noise: float = 0.0
    kill_fraction: float = 0.0
    kill_time: float | None = None

    def __post_init__(self):
        if not 0.0 <= self.message_loss <= 1.0:
            raise ValueError("message_loss must be in [0,1]")
        if self.position_noise < 0.0:
            raise ValueError("position_noise must be >= 0")
        if not 0.0 <= self.kill_fraction <= 1.0:
            raise ValueError("kill_fraction must be in [0,1]")
        if self.kill_time is not None and self.kill_time < 0.0:
            raise ValueError("kill_time must be >= 0")


@dataclass(slots=True)
class InboxEntry:
    export: ExportTree
    sender_perceived: Vec3
    received_at: float
    sender_event: int | None


@dataclass(slots=True)
class DeviceState:
    id: int
    true_position: Vec3
    velocity_goal: Vec3 = field(default_factory=Vec3.zero)
    goal_modality: str = ROUND_BASED
    inbox: dict = field(default_factory=dict)
    previous_export: ExportTree | None = None
    alive: bool = True
    sensors: dict = field(default_factory=dict)
    round_count: int = 0
    last_event_id: int | None = None
    last_round_time: float | None = None
    last_velocity: Vec3 = field(default_factory=Vec3.zero)
    perceived_position: Vec3 | None = None
    last_output: object = None


class World:
    """Single-owner simulation state, mutated only through engine.step()."""

    def __init__(
        self,
        positions,
        comm_range: float,
        *,
        seed: int = 0,
        faults: FaultConfig | None = None,
        max_speed: float = 5.556,
        round_period: float = 1.0,
        message_expiry: float | None = None,
        schedule=None,
        protected=(),
        sensors: dict | None = None,
        recorder=None,
        hooks=None,
    ):
        from .scheduler import JitteredRoundRobin  # cycle-free local import

        if isinstance(positions, dict):
            items = sorted(positions.items())
        else:
            items = list(enumerate(positions))
        self.devices = {
            dev_id: DeviceState(id=dev_id, true_position=pos) for dev_id, pos in items
        }
        if sensors:
            for dev_id, values in sensors.items():
                self.devices[dev_id].sensors.update(values)
        self.comm_range = float(comm_range)
        self.time = 0.0
        self.seed = seed
        self.faults = faults or FaultConfig()
        self.max_speed = float(max_speed)
        self.round_period = float(round_period)
        self.message_expiry = (
            3.0 * self.round_period if message_expiry is None else float(message_expiry)
        )
        self.protected = set(protected)
        self.kill_applied = False
        self.recorder = recorder
        self.hooks = hooks
        self.rng_delivery = random.Random(f"{seed}/delivery")
        self.rng_noise = random.Random(f"{seed}/noise")
        self.rng_kill = random.Random(f"{seed}/kill")
        self.schedule = schedule or JitteredRoundRobin(seed)
        self.schedule.attach(self)

    def alive_ids(self):
        return [d for d, st in sorted(self.devices.items()) if st.alive]

    def alive_devices(self):
        return [st for _, st in sorted(self.devices.items()) if st.alive]
