"""Formation and decision metrics, computed on world snapshots only."""

from __future__ import annotations

import math

from ..blocks.structure import assign_slots, circle_offsets, line_offsets, v_offsets
from ..vectors import Vec3


def formation_error(positions: dict, targets: dict, epsilon: float) -> int:
    """Number of devices farther than epsilon from their target."""
    return sum(
        1
        for dev, target in targets.items()
        if dev in positions and positions[dev].distance_to(target) > epsilon
    )


def angular_alignment(leader_position: Vec3, follower_positions) -> float:
    """Mean absolute arm angle (degrees, folded into [0, 90]) of followers
    relative to the leader; coincident followers are excluded."""
    angles = []
    for pos in follower_positions:
        dx = pos.x - leader_position.x
        dy = pos.y - leader_position.y
        if dx == 0.0 and dy == 0.0:
            continue
        angles.append(math.degrees(math.atan2(abs(dy), abs(dx))))
    if not angles:
        raise ValueError("needs at least one non-coincident follower")
    return sum(angles) / len(angles)


def nearest4_distance(positions) -> float:
    """Mean over devices of the mean distance to their min(4, N-1) nearest
    others."""
    points = list(positions)
    n = len(points)
    if n < 2:
        raise ValueError("needs at least two devices")
    per_device = []
    for i, p in enumerate(points):
        dists = sorted(p.distance_to(q) for j, q in enumerate(points) if j != i)
        k = min(4, n - 1)
        per_device.append(sum(dists[:k]) / k)
    return sum(per_device) / n


def vertical_variation(leader_position: Vec3, follower_positions) -> float:
    """Mean absolute y-difference to the leader."""
    followers = list(follower_positions)
    if not followers:
        raise ValueError("needs at least one follower")
    return sum(abs(p.y - leader_position.y) for p in followers) / len(followers)


def leader_distance(leader_position: Vec3, follower_positions) -> float:
    """Mean Euclidean distance to the leader."""
    followers = list(follower_positions)
    if not followers:
        raise ValueError("needs at least one follower")
    return sum(leader_position.distance_to(p) for p in followers) / len(followers)


def distinct_choices(choices) -> int:
    """Cardinality of the choice set among alive devices."""
    return len(set(choices))


SHAPE_OFFSETS = {
    "circle": lambda n, rear, params: circle_offsets(n, params["radius"]),
    "line": lambda n, rear, params: line_offsets(n, params["spacing"]),
    "vshape": lambda n, rear, params: v_offsets(
        n, params["spacing"], params["angle"], rear
    ),
}


def shadow_targets(world, leader_id: int, shape: str, params: dict) -> dict:
    """Fault-free oracle targets: the assignment the leader would compute
    with perfect communication, anchored at its true position."""
    leader = world.devices[leader_id]
    members = [dev for dev in world.alive_ids()]
    rear = -leader.last_velocity
    offsets = SHAPE_OFFSETS[shape](len(members) - 1, rear, params)
    assignment = assign_slots(leader_id, members, offsets)
    return assignment.targets(leader.true_position)


def min_pairwise_distance(positions) -> float:
    points = list(positions)
    best = math.inf
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            d = points[i].distance_to(points[j])
            if d < best:
                best = d
    return best
