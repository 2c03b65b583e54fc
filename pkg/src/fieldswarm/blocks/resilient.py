"""Self-stabilising coordination operators: gradient, G, C, S, broadcast.

These are the substrate of every leader/team/pattern block.  On a frozen
topology with fair scheduling, each converges to a schedule-independent
limit field and self-heals after device loss.
"""

from __future__ import annotations

import math

from ..constructs import VM, foldhood_plus, mid, mux, nbr, nbr_range, rep
from ..exports import ABSENT

INF = math.inf


def gradient(vm: VM, source) -> float:
    """Self-healing field of minimum distances from source devices.

    Sources hold 0; every other device holds the minimum over neighbours of
    their gradient plus the perceived distance to them; +inf if unreachable.
    """
    source = bool(source)

    def update(distance):
        via_neighbours = foldhood_plus(
            vm, INF, min, lambda: nbr(vm, lambda: distance) + nbr_range(vm)
        )
        return mux(source, 0.0, via_neighbours)

    return rep(vm, INF, update)


def _keep_min(best, candidate):
    """Candidates are (key..., payload) tuples ranked lexicographically on
    their leading fields; None means no candidate."""
    if candidate is None:
        return best
    if best is None or candidate[:-1] < best[:-1]:
        return candidate
    return best


def G(vm: VM, source, value, acc):
    """Gradient-cast: propagate values outward from sources, transforming
    through acc at every hop along minimum-distance paths.

    Sources output their own value; others output acc applied to the value
    held by their gradient parent (ties broken by smallest id); unreachable
    devices output ABSENT.
    """
    source = bool(source)

    def update(state):
        def candidate():
            dist, val = nbr(vm, lambda: state)
            via = dist + nbr_range(vm)
            return (via, nbr(vm, lambda: mid(vm)), val) if math.isfinite(via) else None

        best = foldhood_plus(vm, None, _keep_min, candidate)
        if source:
            return (0.0, value)
        if best is None:
            return (INF, ABSENT)
        return (best[0], acc(best[2]))

    return rep(vm, (INF, ABSENT), update)[1]


def broadcast(vm: VM, center, value):
    """G with the identity accumulator: every device gets the value held by
    its nearest center (ties by id); ABSENT when no center is reachable."""
    return G(vm, center, value, lambda v: v)


def C(vm: VM, sink, value, acc, empty):
    """Collect-cast: aggregate values down the gradient into sink devices.

    Each device outputs acc of its own value and the outputs of its children
    (neighbours that chose it as parent).  acc must be associative and
    commutative with identity `empty` for the limit to be schedule-free.
    """
    potential = gradient(vm, sink)

    def parent_candidate():
        nbr_potential = nbr(vm, lambda: potential)
        key = (nbr_potential + nbr_range(vm), nbr(vm, lambda: mid(vm)))
        # Only strictly descending links: keeps the collection tree acyclic.
        return key if nbr_potential < potential else None

    best = foldhood_plus(vm, None, _keep_min, parent_candidate)
    parent = best[-1] if best is not None else None

    def update(previous_total):
        me = mid(vm)

        def contribution():
            nbr_parent, nbr_total = nbr(vm, lambda: (parent, previous_total))
            return nbr_total if nbr_parent == me else empty

        collected = foldhood_plus(vm, empty, acc, contribution)
        return acc(value, collected)

    return rep(vm, empty, update)


def S(vm: VM, grain: float) -> bool:
    """Sparse choice: a self-stabilising boolean field true on a sparse set
    of leaders.

    Leaders diffuse distance-bounded claims; a device leads iff no
    smaller-id claim reaches it within `grain` of network distance.  At
    convergence leaders are pairwise farther than grain apart and every
    device is within grain of one.
    """
    if grain <= 0:
        raise ValueError("grain must be > 0")
    me = mid(vm)

    def update(previous_claims):
        def shifted():
            claims = nbr(vm, lambda: previous_claims)
            hop = nbr_range(vm)
            return tuple(
                (dev, dist + hop) for dev, dist in claims if dist + hop < grain
            )

        gathered: dict = {}
        def merge(acc_claims, incoming):
            for dev, dist in incoming:
                if dev not in acc_claims or dist < acc_claims[dev]:
                    acc_claims[dev] = dist
            return acc_claims

        gathered = foldhood_plus(vm, gathered, merge, shifted)
        # Echoes of our own claim must not veto our leadership.
        is_leader = all(dev > me for dev in gathered if dev != me)
        claims = [(dev, dist) for dev, dist in gathered.items() if dev != me]
        if is_leader:
            claims.append((me, 0.0))
        return tuple(sorted(claims))

    claims = rep(vm, (), update)
    return any(dev == me for dev, _ in claims)
