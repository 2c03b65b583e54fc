"""Swarm planning: ordered plans with collective completion predicates."""

from __future__ import annotations

from dataclasses import dataclass

from ..constructs import VM, aligned
from ..vectors import Vec3

ONCE = "once"
REPEAT = "repeat"


@dataclass(frozen=True)
class Plan:
    """A behaviour paired with its completion predicate; both are field
    computations (they may use broadcast/C internally)."""

    behaviour: object  # vm -> Vec3
    end_when: object  # vm -> bool


@dataclass(frozen=True)
class Mission:
    plans: tuple
    mode: str = ONCE

    def __post_init__(self):
        if not self.plans:
            raise ValueError("mission needs at least one plan")
        if self.mode not in (ONCE, REPEAT):
            raise ValueError(f"unknown mission mode {self.mode!r}")


def execute_once(*plans: Plan) -> Mission:
    return Mission(plans=tuple(plans), mode=ONCE)


def execute_repeat(*plans: Plan) -> Mission:
    return Mission(plans=tuple(plans), mode=REPEAT)


def run_mission(vm: VM, mission: Mission) -> Vec3:
    """Run the first plan whose leading predicates do not all hold yet.

    Conditions are re-evaluated every round (all of them, in fixed alignment
    scopes), so a collapsed earlier condition pulls execution back to that
    plan.  Once every condition holds, `once` missions stop and `repeat`
    missions wrap to the first plan.
    """
    plans = mission.plans
    flags = [
        aligned(vm, ("cond", i), lambda p=p: bool(p.end_when(vm)))
        for i, p in enumerate(plans)
    ]
    active = 0
    while active < len(plans) and flags[active]:
        active += 1
    if active == len(plans):
        if mission.mode == ONCE:
            return Vec3.zero()
        active = 0
    plan = plans[active]
    return aligned(vm, ("plan", active), lambda: plan.behaviour(vm))
