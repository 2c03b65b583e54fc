"""Builtin scenarios: placement, sensors, programs, and metric samplers."""

from __future__ import annotations

import random
from dataclasses import dataclass

from ..blocks.consensus import consensus
from ..blocks.structure import centered_circle, line, v_shape
from ..blocks.teams import team_formation
from ..constructs import sense
from ..engine import World
from ..exports import ABSENT
from ..vectors import Vec3
from .config import ConfigError, ScenarioConfig
from .metrics import (
    angular_alignment,
    distinct_choices,
    formation_error,
    leader_distance,
    min_pairwise_distance,
    nearest4_distance,
    shadow_targets,
    vertical_variation,
)
from .rescue import RescueEnvironment, RescueParams, build_rescue_program, intra_team_distance


@dataclass
class BuiltScenario:
    world: World
    program: object
    sampler: object  # world -> dict metric name -> float
    metric_names: tuple
    leader_id: int | None = None


def jittered_lattice(rows: int, cols: int, area: float, seed: int) -> list:
    """Regular lattice over the area, deformed by a seeded uniform jitter of
    +-15% of the cell size per device."""
    rng = random.Random(f"{seed}/placement")
    cell_x = area / cols
    cell_y = area / rows
    positions = []
    for r in range(rows):
        for c in range(cols):
            x = (c + 0.5) * cell_x + rng.uniform(-0.15, 0.15) * cell_x
            y = (r + 0.5) * cell_y + rng.uniform(-0.15, 0.15) * cell_y
            positions.append(Vec3(x, y, 0.0))
    return positions


def uniform_placement(count: int, area: float, seed: int) -> list:
    rng = random.Random(f"{seed}/placement")
    return [
        Vec3(rng.uniform(0.0, area), rng.uniform(0.0, area), 0.0)
        for _ in range(count)
    ]


def _center_device(rows: int, cols: int) -> int:
    return (rows // 2) * cols + cols // 2


def _alive_positions(world) -> dict:
    return {d.id: d.true_position for d in world.alive_devices()}


def _build_shape(cfg: ScenarioConfig, seed: int, shape: str, recorder=None) -> BuiltScenario:
    positions = jittered_lattice(cfg.grid_rows, cfg.grid_cols, cfg.area_size, seed)
    leader = _center_device(cfg.grid_rows, cfg.grid_cols)
    sensors = {d: {"leader": d == leader} for d in range(len(positions))}
    world = World(
        positions,
        comm_range=cfg.comm_range,
        seed=seed,
        faults=cfg.faults(),
        max_speed=cfg.max_speed,
        sensors=sensors,
        protected={leader},
        recorder=recorder,
    )
    params = dict(cfg.program_params)

    if shape == "circle":
        radius = float(params.get("radius", 60.0))
        program = lambda vm: centered_circle(vm, sense(vm, "leader"), radius)
        shape_params = {"radius": radius}
        extra = ("rho",)
    elif shape == "vshape":
        spacing = float(params.get("spacing", 30.0))
        angle = float(params.get("angle", 60.0))
        program = lambda vm: v_shape(vm, sense(vm, "leader"), spacing, angle)
        shape_params = {"spacing": spacing, "angle": angle}
        extra = ("alpha",)
    elif shape == "line":
        spacing = float(params.get("spacing", 20.0))
        program = lambda vm: line(vm, sense(vm, "leader"), spacing)
        shape_params = {"spacing": spacing}
        extra = ("vbar",)
    else:
        raise ConfigError(f"unknown shape {shape!r}")

    def sampler(world) -> dict:
        positions = _alive_positions(world)
        targets = shadow_targets(world, leader, shape, shape_params)
        leader_pos = world.devices[leader].true_position
        followers = [p for dev, p in positions.items() if dev != leader]
        row = {"error": float(formation_error(positions, targets, cfg.epsilon))}
        if shape == "circle":
            row["rho"] = leader_distance(leader_pos, followers)
        elif shape == "vshape":
            row["alpha"] = angular_alignment(leader_pos, followers)
        else:
            row["vbar"] = vertical_variation(leader_pos, followers)
        return row

    return BuiltScenario(
        world=world,
        program=program,
        sampler=sampler,
        metric_names=("error",) + extra,
        leader_id=leader,
    )


def _build_separation(cfg: ScenarioConfig, seed: int, recorder=None) -> BuiltScenario:
    positions = jittered_lattice(cfg.grid_rows, cfg.grid_cols, cfg.area_size, seed)
    leader = _center_device(cfg.grid_rows, cfg.grid_cols)
    sensors = {d: {"leader": d == leader} for d in range(len(positions))}
    world = World(
        positions,
        comm_range=cfg.comm_range,
        seed=seed,
        faults=cfg.faults(),
        max_speed=cfg.max_speed,
        sensors=sensors,
        protected={leader},
        recorder=recorder,
    )
    distance = float(cfg.program_params.get("distance", 60.0))

    def program(vm):
        team = team_formation(
            vm,
            intra_distance=distance,
            leaders=sense(vm, "leader"),
            condition=lambda _lid: False,
        )
        return team.velocity * sense(vm, "max_speed") * 0.5

    def sampler(world) -> dict:
        return {"delta": nearest4_distance(_alive_positions(world).values())}

    return BuiltScenario(
        world=world,
        program=program,
        sampler=sampler,
        metric_names=("delta",),
        leader_id=leader,
    )


def _uniform_preferences(k: int) -> tuple:
    return tuple(1.0 / k for _ in range(k))


def _one_hot(k: int, index: int) -> tuple:
    return tuple(1.0 if i == index else 0.0 for i in range(k))


def _build_consensus(cfg: ScenarioConfig, seed: int, recorder=None) -> BuiltScenario:
    positions = jittered_lattice(cfg.grid_rows, cfg.grid_cols, cfg.area_size, seed)
    leader = _center_device(cfg.grid_rows, cfg.grid_cols)
    params = cfg.program_params
    k = int(params.get("options", 4))
    leader_option = int(params.get("leader_option", 2))
    follower_mode = params.get("follower_preferences", "uniform")
    rng = random.Random(f"{seed}/preferences")

    sensors = {}
    for dev in range(len(positions)):
        if dev == leader:
            prefs = _one_hot(k, leader_option)
        elif follower_mode == "random":
            raw = [rng.random() for _ in range(k)]
            total = sum(raw)
            prefs = tuple(v / total for v in raw)
        else:
            prefs = _uniform_preferences(k)
        sensors[dev] = {"preferences": prefs, "leader": dev == leader}

    world = World(
        positions,
        comm_range=cfg.comm_range,
        seed=seed,
        faults=cfg.faults(),
        max_speed=cfg.max_speed,
        sensors=sensors,
        protected={leader},
        recorder=recorder,
    )

    program = lambda vm: consensus(vm, sense(vm, "preferences"))

    def sampler(world) -> dict:
        choices = [
            d.last_output for d in world.alive_devices() if d.last_output is not None
        ]
        row = {"distinct": float(distinct_choices(choices)) if choices else float(k)}
        unanimous = len(set(choices)) == 1 and bool(choices)
        row["leader_agree"] = float(unanimous and choices[0] == leader_option)
        return row

    return BuiltScenario(
        world=world,
        program=program,
        sampler=sampler,
        metric_names=("distinct", "leader_agree"),
        leader_id=leader,
    )


def _build_rescue(cfg: ScenarioConfig, seed: int, recorder=None) -> BuiltScenario:
    params = cfg.program_params
    explorers = int(params.get("explorers", 50))
    healers = int(params.get("healers", 5))
    count = explorers + healers
    rescue_params = RescueParams(
        radius=float(params.get("radius", 50.0)),
        min_distance=float(params.get("min_distance", 25.0)),
        confidence=float(params.get("confidence", 10.0)),
        avoid_distance=float(params.get("avoid_distance", 15.0)),
        detect_radius=float(params.get("detect_radius", 100.0)),
        heal_radius=float(params.get("heal_radius", 10.0)),
        explore_speed=float(params.get("explore_speed", 2.5)),
        heal_speed=float(params.get("heal_speed", 2.5)),
        area_size=cfg.area_size,
        spawn_rate=float(params.get("spawn_rate", 6.0 / 900.0)),
        spawn_until=float(params.get("spawn_until", 900.0)),
    )
    positions = uniform_placement(count, cfg.area_size, seed)
    healer_ids = set(range(healers))  # healers are the first ids, placed like all
    sensors = {d: {"healer": d in healer_ids} for d in range(count)}
    environment = RescueEnvironment(rescue_params, seed)
    world = World(
        positions,
        comm_range=cfg.comm_range,
        seed=seed,
        faults=cfg.faults(),
        max_speed=cfg.max_speed,
        sensors=sensors,
        protected=healer_ids,
        recorder=recorder,
        hooks=environment,
    )
    program = build_rescue_program(rescue_params)

    def sampler(world) -> dict:
        intra = intra_team_distance(world)
        return {
            "intra_team": intra if intra is not None else 0.0,
            "min_distance": min_pairwise_distance(_alive_positions(world).values()),
            "in_danger": float(environment.active_count(world.time)),
        }

    return BuiltScenario(
        world=world,
        program=program,
        sampler=sampler,
        metric_names=("intra_team", "min_distance", "in_danger"),
        leader_id=None,
    )


def build(cfg: ScenarioConfig, seed: int, recorder=None) -> BuiltScenario:
    if cfg.program in ("circle", "vshape", "line"):
        return _build_shape(cfg, seed, cfg.program, recorder)
    if cfg.program == "separation":
        return _build_separation(cfg, seed, recorder)
    if cfg.program == "consensus":
        return _build_consensus(cfg, seed, recorder)
    if cfg.program == "rescue":
        return _build_rescue(cfg, seed, recorder)
    raise ConfigError(f"unknown program {cfg.program!r}")


DEFAULT_SCENARIOS = {
    "circle": ScenarioConfig(
        name="circle",
        program="circle",
        duration=1200.0,
        program_params={"radius": 60.0},
        metrics=("error", "rho"),
    ),
    "vshape": ScenarioConfig(
        name="vshape",
        program="vshape",
        duration=1200.0,
        program_params={"spacing": 30.0, "angle": 60.0},
        metrics=("error", "alpha"),
    ),
    "line": ScenarioConfig(
        name="line",
        program="line",
        duration=1200.0,
        program_params={"spacing": 20.0},
        metrics=("error", "vbar"),
    ),
    "separation": ScenarioConfig(
        name="separation",
        program="separation",
        duration=800.0,
        program_params={"distance": 60.0},
        metrics=("delta",),
    ),
    "consensus": ScenarioConfig(
        name="consensus",
        program="consensus",
        duration=300.0,
        replications=8,
        program_params={"options": 4, "leader_option": 2},
        metrics=("distinct", "leader_agree"),
    ),
    "rescue": ScenarioConfig(
        name="rescue",
        program="rescue",
        area_size=500.0,
        comm_range=100.0,
        duration=1800.0,
        placement="uniform",
        devices=55,
        program_params={"explorers": 50, "healers": 5},
        metrics=("intra_team", "min_distance", "in_danger"),
    ),
}


def default_scenario(name: str) -> ScenarioConfig:
    try:
        return DEFAULT_SCENARIOS[name]
    except KeyError:
        raise ConfigError(
            f"unknown scenario {name!r}; known: {sorted(DEFAULT_SCENARIOS)}"
        ) from None
