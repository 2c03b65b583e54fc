"""Team formation: spatial splitting of the swarm under elected or
predetermined leaders, with per-team aligned execution."""

from __future__ import annotations

from dataclasses import dataclass

from ..constructs import VM, aligned, foldhood_plus, mid, nbr, nbr_range, sense
from ..exports import ABSENT
from ..vectors import Vec3
from .resilient import C, S, broadcast


@dataclass
class Team:
    """A leader-anchored subset; bodies of different teams never align."""

    leader_id: object  # device id, or ABSENT when no leader is reachable
    velocity: Vec3
    formed: bool
    _vm: VM

    def inside_team(self, body) -> Vec3:
        """Run body(leader_id) aligned per team."""
        key = self.leader_id if self.leader_id is not ABSENT else ABSENT
        return aligned(self._vm, key, lambda: body(self.leader_id))


def _gather_velocity(vm: VM, leader_position, intra_distance: float) -> Vec3:
    """Close in on the leader while repelling from members nearer than the
    intra-team distance."""
    here = sense(vm, "position")
    attract = Vec3.zero()
    if leader_position is not ABSENT:
        offset = leader_position - here
        if offset.norm() > intra_distance:
            attract = offset.normalize()

    def push():
        their = nbr(vm, lambda: sense(vm, "position"))
        distance = nbr_range(vm)
        if distance >= intra_distance or distance == 0.0:
            return Vec3.zero()
        away = here - their
        if away.norm() == 0.0:
            return Vec3.zero()
        return away.normalize() * (1.0 - distance / intra_distance)

    repel = foldhood_plus(vm, Vec3.zero(), lambda a, b: a + b, push)
    return (attract + repel).normalize()


def team_formation(
    vm: VM,
    intra_distance: float,
    extra_distance: float | None = None,
    condition=None,
    leaders=None,
) -> Team:
    """Split the swarm into leader-anchored teams.

    Leaders come from an explicit boolean field when given, otherwise from
    S(extra_distance).  Until condition(leader_id) holds, the team velocity
    gathers members around the leader at the intra-team separation.
    """
    if intra_distance <= 0:
        raise ValueError("intra_distance must be > 0")
    if leaders is None:
        if extra_distance is None or extra_distance <= 0:
            raise ValueError("extra_distance must be > 0 when leaders are elected")
        is_leader = S(vm, extra_distance)
    else:
        is_leader = bool(leaders)

    leader_id = broadcast(vm, is_leader, mid(vm))
    leader_position = broadcast(vm, is_leader, sense(vm, "position"))

    formed = bool(condition(leader_id)) if condition is not None else True
    if formed or is_leader:
        velocity = Vec3.zero()
    else:
        velocity = _gather_velocity(vm, leader_position, intra_distance)
    return Team(leader_id=leader_id, velocity=velocity, formed=formed, _vm=vm)


def is_team_formed(vm: VM, leader, target_distance: float, necessary: int = 1) -> bool:
    """True on the whole region iff every member of the leader's region has
    at least `necessary` neighbours within target_distance."""
    nearby = foldhood_plus(
        vm, 0, lambda a, b: a + b, lambda: 1 if nbr_range(vm) <= target_distance else 0
    )
    locally_ok = nearby >= necessary
    all_ok = C(vm, leader, locally_ok, lambda a, b: a and b, True)
    verdict = broadcast(vm, leader, all_ok)
    return verdict is True
