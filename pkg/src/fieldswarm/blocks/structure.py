"""Leader-based and pattern-formation blocks.

A leader collects member positions through C, assigns each member a target
offset around itself, and broadcasts the absolute targets through G; members
steer toward their target (falling back to plain leader attraction while
unassigned).  Shapes are offset generators: V arms, a horizontal line, a
circle around the leader.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from ..constructs import VM, mid, sense
from ..exports import ABSENT
from ..vectors import Vec3, rotate_z
from .movement import DEFAULT_ARRIVE_TOLERANCE, go_to
from .resilient import C, broadcast


@dataclass(frozen=True)
class FormationPattern:
    """Finite target offset set anchored at a leader, with membership
    tolerance epsilon."""

    offsets: tuple
    epsilon: float = 5.0

    def __post_init__(self):
        if self.epsilon <= 0:
            raise ValueError("epsilon must be > 0")
        if Vec3.zero() not in self.offsets:
            raise ValueError("pattern must include the zero offset")
        if len(set(self.offsets)) != len(self.offsets):
            raise ValueError("pattern offsets must be pairwise distinct")

    def follower_offsets(self) -> tuple:
        return tuple(o for o in self.offsets if o != Vec3.zero())


@dataclass(frozen=True)
class FormationAssignment:
    """Deterministic member -> offset mapping; the anchor maps to zero."""

    mapping: dict
    anchor: int

    def __post_init__(self):
        if self.mapping.get(self.anchor, Vec3.zero()) != Vec3.zero():
            raise ValueError("anchor must map to the zero offset")
        offsets = list(self.mapping.values())
        if len(set(offsets)) != len(offsets):
            raise ValueError("assignment must be injective into the offsets")

    def targets(self, anchor_position: Vec3) -> dict:
        return {dev: anchor_position + off for dev, off in self.mapping.items()}


def assign_slots(anchor: int, member_ids, offsets) -> FormationAssignment:
    """Pair ascending member ids with canonically ordered offsets by rank.

    Members beyond the available offsets stay unassigned (they fall back to
    leader attraction until slots open up).
    """
    followers = sorted(dev for dev in set(member_ids) if dev != anchor)
    mapping = {anchor: Vec3.zero()}
    for dev, off in zip(followers, offsets):
        mapping[dev] = off
    return FormationAssignment(mapping=mapping, anchor=anchor)


def v_offsets(count: int, spacing: float, angle_deg: float, rear: Vec3) -> tuple:
    """V arms behind the leader: alternating arms at +-angle/2 off the rear
    axis, depths in spacing multiples."""
    half = math.radians(angle_deg) / 2.0
    rear_unit = rear.normalize()
    if rear_unit == Vec3.zero():
        rear_unit = Vec3(-1.0, 0.0, 0.0)
    out = []
    for i in range(count):
        depth = (i // 2) + 1
        side = 1.0 if i % 2 == 0 else -1.0
        out.append(rotate_z(rear_unit, side * half) * (depth * spacing))
    return tuple(out)


def line_offsets(count: int, spacing: float) -> tuple:
    """Horizontal offsets center-out, alternating sides."""
    out = []
    for i in range(count):
        k = (i // 2) + 1
        side = 1.0 if i % 2 == 0 else -1.0
        out.append(Vec3(side * k * spacing, 0.0, 0.0))
    return tuple(out)


def circle_offsets(count: int, radius: float) -> tuple:
    """Equally spaced points on the radius circle (leader at center)."""
    out = []
    for k in range(count):
        theta = 2.0 * math.pi * k / count
        out.append(Vec3(radius * math.cos(theta), radius * math.sin(theta), 0.0))
    return tuple(out)


def align_with_leader(vm: VM, leader, velocity: Vec3) -> Vec3:
    """Propagate the leader's velocity over its area of influence."""
    received = broadcast(vm, leader, velocity)
    return Vec3.zero() if received is ABSENT else received


def sink_at(vm: VM, leader, arrive_tolerance: float = DEFAULT_ARRIVE_TOLERANCE) -> Vec3:
    """Unit vector toward the nearest leader; zero at the leader itself or
    when no leader is reachable."""
    anchor = broadcast(vm, leader, sense(vm, "position"))
    if leader or anchor is ABSENT:
        return Vec3.zero()
    offset = anchor - sense(vm, "position")
    if offset.norm() <= arrive_tolerance:
        return Vec3.zero()
    return offset.normalize()


def _collect_members(vm: VM, leader) -> tuple:
    """(id, perceived position) pairs of the leader's region, via C."""
    return C(
        vm,
        leader,
        ((mid(vm), sense(vm, "position")),),
        lambda a, b: a + b,
        (),
    )


def _device_speed(vm: VM, speed: float | None) -> float:
    if speed is not None:
        return speed
    return vm.ctx.sensors.get("max_speed", 1.0)


def _form(vm: VM, leader, offsets_for, leader_velocity=None, speed=None) -> Vec3:
    """Shared formation core; offsets_for(n_followers, rear_axis) -> offsets."""
    leader = bool(leader)
    members = _collect_members(vm, leader)
    if leader:
        here = sense(vm, "position")
        ids = sorted({dev for dev, _ in dict(members).items() if dev != mid(vm)})
        rear = -sense(vm, "velocity")
        offsets = offsets_for(len(ids), rear)
        table = tuple((dev, here + off) for dev, off in zip(ids, offsets))
        payload = (here, table)
    else:
        payload = (Vec3.zero(), ())
    shared = broadcast(vm, leader, payload)

    if leader:
        return leader_velocity() if leader_velocity is not None else Vec3.zero()
    if shared is ABSENT:
        return Vec3.zero()
    anchor, table = shared
    me = mid(vm)
    for dev, target in table:
        if dev == me:
            return go_to(vm, target, speed=_device_speed(vm, speed))
    # Not yet assigned a slot: close in on the leader meanwhile.
    offset = anchor - sense(vm, "position")
    if offset.norm() <= DEFAULT_ARRIVE_TOLERANCE:
        return Vec3.zero()
    return offset.normalize() * _device_speed(vm, speed)


def form_shape(vm: VM, leader, pattern: FormationPattern, leader_velocity=None, speed=None) -> Vec3:
    """Steer members onto the pattern's offsets around the leader."""
    fixed = pattern.follower_offsets()
    return _form(vm, leader, lambda n, rear: fixed, leader_velocity, speed)


def v_shape(
    vm: VM,
    leader,
    spacing: float,
    angle_deg: float,
    leader_velocity=None,
    speed=None,
) -> Vec3:
    if spacing <= 0 or not 0 < angle_deg < 180:
        raise ValueError("require spacing > 0 and angle in (0, 180)")
    return _form(
        vm,
        leader,
        lambda n, rear: v_offsets(n, spacing, angle_deg, rear),
        leader_velocity,
        speed,
    )


def line(vm: VM, leader, spacing: float, leader_velocity=None, speed=None) -> Vec3:
    if spacing <= 0:
        raise ValueError("spacing must be > 0")
    return _form(
        vm, leader, lambda n, rear: line_offsets(n, spacing), leader_velocity, speed
    )


def centered_circle(vm: VM, leader, radius: float, leader_velocity=None, speed=None) -> Vec3:
    if radius <= 0:
        raise ValueError("radius must be > 0")
    return _form(
        vm, leader, lambda n, rear: circle_offsets(n, radius), leader_velocity, speed
    )


def in_formation(positions: dict, assignment: FormationAssignment, epsilon: float) -> dict:
    """Per-device membership: within epsilon of the translated target."""
    anchor_pos = positions[assignment.anchor]
    targets = assignment.targets(anchor_pos)
    return {
        dev: positions[dev].distance_to(target) <= epsilon
        for dev, target in targets.items()
        if dev in positions
    }
