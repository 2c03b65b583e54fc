"""Individual-movement velocity fields: random walks, waypoints, holds,
obstacle avoidance."""

from __future__ import annotations

import math

from ..constructs import VM, rep, sense
from ..vectors import Vec3

# Half-normal magnitudes calibrated so the mean equals the requested scale.
_HALF_NORMAL_MEAN_FACTOR = math.sqrt(math.pi / 2.0)

DEFAULT_ARRIVE_TOLERANCE = 1.0  # metres
DEFAULT_SAFE_DISTANCE = 25.0  # metres, obstacle weight reference


def brownian(vm: VM, scale: float) -> Vec3:
    """Random planar direction with magnitude distributed around scale;
    a fresh sample every round."""
    if scale <= 0.0:
        return Vec3.zero()
    rng = vm.random
    angle = rng.uniform(0.0, 2.0 * math.pi)
    magnitude = abs(rng.gauss(0.0, scale * _HALF_NORMAL_MEAN_FACTOR))
    return Vec3(magnitude * math.cos(angle), magnitude * math.sin(angle), 0.0)


def go_to(
    vm: VM,
    target: Vec3,
    speed: float = 1.0,
    arrive_tolerance: float = DEFAULT_ARRIVE_TOLERANCE,
) -> Vec3:
    """Velocity toward target from the perceived position; zero within the
    arrival tolerance.  The magnitude is capped so the next kinematic step
    lands on the target instead of overshooting."""
    here = sense(vm, "position")
    offset = target - here
    distance = offset.norm()
    if distance <= arrive_tolerance:
        return Vec3.zero()
    period = vm.ctx.round_period
    magnitude = min(speed, distance / period) if period > 0 else speed
    return offset.normalize() * magnitude


def explore(
    vm: VM,
    min_bound: Vec3,
    max_bound: Vec3,
    speed: float = 1.0,
    arrive_tolerance: float = DEFAULT_ARRIVE_TOLERANCE,
) -> Vec3:
    """Wander toward rep-held waypoints drawn uniformly in the rectangle,
    resampled on arrival."""
    here = sense(vm, "position")

    def update(waypoint):
        if waypoint is None or (waypoint - here).norm() <= arrive_tolerance:
            rng = vm.random
            return Vec3(
                rng.uniform(min_bound.x, max_bound.x),
                rng.uniform(min_bound.y, max_bound.y),
                rng.uniform(min_bound.z, max_bound.z),
            )
        return waypoint

    waypoint = rep(vm, None, update)
    return go_to(vm, waypoint, speed=speed, arrive_tolerance=arrive_tolerance)


def maintain_trajectory(vm: VM, generator, hold_time: float) -> Vec3:
    """Hold the generated vector until the hold expires, then resample."""
    if hold_time <= 0.0:
        raise ValueError("hold_time must be > 0")
    now = vm.ctx.time

    def update(state):
        held, expires_at = state
        if held is None or now >= expires_at:
            return (generator(), now + hold_time)
        return state

    held, _ = rep(vm, (None, -math.inf), update)
    return held


def maintain_until(direction: Vec3, condition) -> Vec3:
    """Direction while the condition is false; zero once it holds.  Re-arms
    as soon as the condition clears again."""
    return Vec3.zero() if condition else direction


def obstacle_avoidance(
    obstacles, safe_distance: float = DEFAULT_SAFE_DISTANCE
) -> Vec3:
    """Sum of inverse-square-weighted repulsions away from each obstacle
    vector (pointing from self toward the obstacle, in metres)."""
    total = Vec3.zero()
    for obstacle in obstacles:
        distance = obstacle.norm()
        if distance == 0.0:
            continue
        weight = (safe_distance / distance) ** 2
        total = total - obstacle.normalize() * weight
    return total
