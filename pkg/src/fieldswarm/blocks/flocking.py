"""Flocking velocity fields: Reynolds components, Vicsek, Cucker-Smale.

All blocks read neighbour data only through nbr exchanges and nbrRange, take
the previous velocity as a parameter (rep it at the call site), and accept a
neighbourhood query restricting which one-hop neighbours count.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..constructs import VM, foldhood, foldhood_plus, nbr, nbr_range, sense
from ..vectors import Vec3


@dataclass(frozen=True, slots=True)
class NeighbourhoodQuery:
    """One-hop neighbourhood, optionally filtered by nbrRange <= radius."""

    radius: float | None = None

    def admits(self, distance: float) -> bool:
        return self.radius is None or distance <= self.radius


ONE_HOP = NeighbourhoodQuery()


def within_range(radius: float) -> NeighbourhoodQuery:
    return NeighbourhoodQuery(radius=radius)


DEFAULT_SEPARATION_RADIUS = 25.0
DEFAULT_COHESION_RADIUS = 100.0
DEFAULT_ALIGNMENT_RADIUS = 100.0


def separation(vm: VM, old: Vec3, query: NeighbourhoodQuery) -> Vec3:
    """Repulsion away from queried neighbours, inverse-square in distance."""
    here = sense(vm, "position")

    def push():
        their = nbr(vm, lambda: sense(vm, "position"))
        if not query.admits(nbr_range(vm)):
            return Vec3.zero()
        away = here - their
        distance = away.norm()
        if distance == 0.0:
            return Vec3.zero()
        return away.normalize() * (1.0 / (distance * distance))

    return foldhood_plus(vm, Vec3.zero(), lambda a, b: a + b, push)


def cohesion(vm: VM, old: Vec3, query: NeighbourhoodQuery) -> Vec3:
    """Unit vector toward the centroid of queried neighbours' positions."""
    here = sense(vm, "position")

    def entry():
        their = nbr(vm, lambda: sense(vm, "position"))
        if not query.admits(nbr_range(vm)):
            return (Vec3.zero(), 0)
        return (their, 1)

    total, count = foldhood_plus(
        vm, (Vec3.zero(), 0), lambda a, b: (a[0] + b[0], a[1] + b[1]), entry
    )
    if count == 0:
        return Vec3.zero()
    return (total / count - here).normalize()


def alignment(vm: VM, old: Vec3, query: NeighbourhoodQuery) -> Vec3:
    """Mean of queried neighbours' shared previous velocities."""

    def entry():
        their = nbr(vm, lambda: old)
        if not query.admits(nbr_range(vm)):
            return (Vec3.zero(), 0)
        return (their, 1)

    total, count = foldhood_plus(
        vm, (Vec3.zero(), 0), lambda a, b: (a[0] + b[0], a[1] + b[1]), entry
    )
    if count == 0:
        return Vec3.zero()
    return total / count


def reynolds(
    vm: VM,
    old: Vec3,
    weights: tuple = (1.0, 1.0, 1.0),
    queries: tuple | None = None,
) -> Vec3:
    """Weighted normalized sum of separation, cohesion, and alignment.

    The separation range is typically tighter than cohesion/alignment;
    defaults 25 m vs 100 m.
    """
    if queries is None:
        queries = (
            within_range(DEFAULT_SEPARATION_RADIUS),
            within_range(DEFAULT_COHESION_RADIUS),
            within_range(DEFAULT_ALIGNMENT_RADIUS),
        )
    w_sep, w_coh, w_ali = weights
    q_sep, q_coh, q_ali = queries
    combined = (
        separation(vm, old, q_sep) * w_sep
        + cohesion(vm, old, q_coh) * w_coh
        + alignment(vm, old, q_ali) * w_ali
    )
    return combined.normalize()


def vicsek(vm: VM, old: Vec3, query: NeighbourhoodQuery, noise_scale: float = 0.0) -> Vec3:
    """Mean of the neighbourhood's velocities (self included) plus Gaussian
    per-component noise."""

    def entry():
        their = nbr(vm, lambda: old)
        if not query.admits(nbr_range(vm)):
            return (Vec3.zero(), 0)
        return (their, 1)

    total, count = foldhood(
        vm, (Vec3.zero(), 0), lambda a, b: (a[0] + b[0], a[1] + b[1]), entry
    )
    mean = total / count if count else Vec3.zero()
    if noise_scale > 0.0:
        rng = vm.random
        mean = mean + Vec3(
            rng.gauss(0.0, noise_scale),
            rng.gauss(0.0, noise_scale),
            0.0,
        )
    return mean


def cucker_smale(
    vm: VM,
    old: Vec3,
    query: NeighbourhoodQuery,
    strength: float = 1.0,
    sigma: float = 10.0,
    beta: float = 0.5,
) -> Vec3:
    """Velocity consensus with distance-decaying coupling
    psi(r) = strength / (sigma^2 + r^2)^beta, self included in the mean."""
    if strength <= 0 or sigma <= 0 or beta < 0:
        raise ValueError("require strength > 0, sigma > 0, beta >= 0")

    def entry():
        their = nbr(vm, lambda: old)
        distance = nbr_range(vm)
        if not query.admits(distance):
            return (Vec3.zero(), 0)
        psi = strength / (sigma * sigma + distance * distance) ** beta
        return ((their - old) * psi, 1)

    total, count = foldhood(
        vm, (Vec3.zero(), 0), lambda a, b: (a[0] + b[0], a[1] + b[1]), entry
    )
    if count == 0:
        return old
    return old + total / count
