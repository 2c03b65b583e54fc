"""Find-and-rescue case study: danger sites, healer teams, the mission.

Teams of explorers led by healers circle up, wander the area, report danger
sightings to their healer, escort it to the site, and hold while it heals.
Danger sites spawn Poisson-in-time and uniform-in-space during the spawn
window and stay active until a healer dwells within the heal radius.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass, field

from ..blocks.flocking import separation, within_range
from ..blocks.movement import explore, go_to
from ..blocks.planning import Plan, execute_repeat, run_mission
from ..blocks.resilient import C, broadcast
from ..blocks.structure import centered_circle
from ..blocks.teams import is_team_formed, team_formation
from ..constructs import VM, mid, sense
from ..exports import ABSENT
from ..vectors import Vec3


@dataclass
class RescueParams:
    radius: float = 50.0  # circle radius around the healer
    min_distance: float = 25.0  # intra-team separation while gathering
    confidence: float = 10.0  # slack on formed/circled checks
    avoid_distance: float = 15.0  # global separation radius
    detect_radius: float = 100.0  # danger sensing range
    heal_radius: float = 10.0  # dwell distance that resolves a danger
    explore_speed: float = 2.5  # leader cruise while wandering (m/s)
    heal_speed: float = 2.5  # leader approach speed toward dangers (m/s)
    separation_gain: float = 150.0
    area_size: float = 500.0
    spawn_rate: float = 6.0 / 900.0  # dangers per second during the window
    spawn_until: float = 900.0  # S_k


@dataclass
class DangerSite:
    position: Vec3
    spawn_time: float
    resolved_at: float | None = None

    def active(self, now: float) -> bool:
        return self.spawn_time <= now and self.resolved_at is None


class RescueEnvironment:
    """World hooks: danger sensing before rounds, healing after them."""

    def __init__(self, params: RescueParams, seed: int):
        self.params = params
        self.sites: list[DangerSite] = []
        rng = random.Random(f"{seed}/dangers")
        t = rng.expovariate(params.spawn_rate)
        while t < params.spawn_until:
            self.sites.append(
                DangerSite(
                    position=Vec3(
                        rng.uniform(0.0, params.area_size),
                        rng.uniform(0.0, params.area_size),
                        0.0,
                    ),
                    spawn_time=t,
                )
            )
            t += rng.expovariate(params.spawn_rate)

    def active_sites(self, now: float):
        return [s for s in self.sites if s.active(now)]

    def active_count(self, now: float) -> int:
        return len(self.active_sites(now))

    def before_round(self, world, device) -> None:
        here = device.true_position
        device.sensors["danger"] = tuple(
            s.position
            for s in self.active_sites(world.time)
            if here.distance_to(s.position) <= self.params.detect_radius
        )

    def after_round(self, world, device) -> None:
        if not device.sensors.get("healer"):
            return
        here = device.true_position
        for site in self.active_sites(world.time):
            if here.distance_to(site.position) <= self.params.heal_radius:
                site.resolved_at = world.time


def _pick_target(sightings):
    if not sightings:
        return ABSENT
    return min(sightings, key=lambda p: (p.x, p.y, p.z))


def build_rescue_program(params: RescueParams):
    """Compose the rescue behaviour; returns a program emitting
    (velocity, leader_id) so the harness can observe team structure."""
    p = params
    margin = p.radius + 10.0
    low = Vec3(margin, margin, 0.0)
    high = Vec3(p.area_size - margin, p.area_size - margin, 0.0)

    def program(vm: VM):
        healer = bool(sense(vm, "healer"))
        team = team_formation(
            vm,
            intra_distance=p.min_distance,
            leaders=healer,
            condition=lambda _lid: is_team_formed(
                vm, healer, p.min_distance + p.confidence
            ),
        )

        def planning(leader_id) -> Vec3:
            leading = leader_id == mid(vm)
            here = sense(vm, "position")

            # Collective facts, shared once per round within the team.
            leader_pos = broadcast(vm, leading, here)
            sightings = C(
                vm, leading, tuple(sense(vm, "danger")), lambda a, b: a + b, ()
            )
            target = broadcast(vm, leading, _pick_target(sightings))
            danger_found = broadcast(vm, leading, bool(sightings)) is True
            if leading and target is not ABSENT:
                reached = here.distance_to(target) <= 0.8 * p.heal_radius
            else:
                reached = False
            danger_reached = broadcast(vm, leading, reached) is True
            near = (
                True
                if leader_pos is ABSENT
                else here.distance_to(leader_pos) <= p.radius + p.confidence
            )
            all_near = C(vm, leading, near, lambda a, b: a and b, True)
            circle_formed = broadcast(vm, leading, all_near) is True

            # The mission modulates only the leader's own motion; the circle
            # formation stays live across plan switches.
            hold = lambda _vm: Vec3.zero()

            def wander(_vm):
                if not leading:
                    return Vec3.zero()
                return explore(vm, low, high, speed=p.explore_speed)

            def approach(_vm):
                if not leading or target is ABSENT:
                    return Vec3.zero()
                return go_to(vm, target, speed=p.heal_speed)

            mission = execute_repeat(
                Plan(hold, lambda _vm: circle_formed),
                Plan(wander, lambda _vm: danger_found),
                Plan(approach, lambda _vm: danger_reached),
                Plan(hold, lambda _vm: not danger_found),
            )
            leader_move = run_mission(vm, mission)
            return centered_circle(
                vm, leading, p.radius, leader_velocity=lambda: leader_move
            )

        inside = team.inside_team(planning)
        avoid = separation(vm, inside, within_range(p.avoid_distance))
        velocity = (inside + avoid * p.separation_gain).clamp(
            sense(vm, "max_speed")
        )
        return (velocity, team.leader_id)

    return program


def intra_team_distance(world) -> float | None:
    """Mean member-to-own-leader distance over devices with a live leader."""
    distances = []
    for device in world.alive_devices():
        if device.sensors.get("healer"):
            continue
        out = device.last_output
        if not isinstance(out, tuple) or len(out) != 2:
            continue
        leader_id = out[1]
        if leader_id is ABSENT or leader_id not in world.devices:
            continue
        leader = world.devices[leader_id]
        if not leader.alive:
            continue
        distances.append(device.true_position.distance_to(leader.true_position))
    if not distances:
        return None
    return sum(distances) / len(distances)
