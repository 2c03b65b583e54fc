"""Augmented event structures: the recorded trace of a run.

Events are (id, device, time, position); edges are message deliveries that
a round's context actually consumed, plus self-edges for state carry-over.
The structure feeds the adherence and convergence checkers.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field

from ..vectors import Vec3


class NotConverged:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "NOT_CONVERGED"


NOT_CONVERGED = NotConverged()


@dataclass(slots=True)
class EventStructure:
    events: list = field(default_factory=list)  # (event_id, device, t, Vec3)
    edges: list = field(default_factory=list)  # (from_event, to_event)
    outputs: list = field(default_factory=list)  # program output per event

    def device_events(self) -> dict:
        """Per-device event lists [(t, event_id)], time-ordered."""
        per = {}
        for event_id, dev, t, _pos in self.events:
            per.setdefault(dev, []).append((t, event_id))
        for lst in per.values():
            lst.sort()
        return per

    def dump(self) -> str:
        lines = []
        for event_id, dev, t, pos in self.events:
            lines.append(f"event {event_id} {dev} {t!r} {pos.x!r} {pos.y!r} {pos.z!r}")
        for src, dst in self.edges:
            lines.append(f"edge {src} {dst}")
        return "\n".join(lines) + "\n"

    @staticmethod
    def parse(text: str) -> "EventStructure":
        es = EventStructure()
        for line in text.splitlines():
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "event":
                event_id, dev = int(parts[1]), int(parts[2])
                t = float(parts[3])
                pos = Vec3(float(parts[4]), float(parts[5]), float(parts[6]))
                es.events.append((event_id, dev, t, pos))
            elif parts[0] == "edge":
                es.edges.append((int(parts[1]), int(parts[2])))
        return es


class EventRecorder:
    """Accumulates an EventStructure while a run executes."""

    def __init__(self):
        self._es = EventStructure()
        self._next_id = 0

    def add_event(self, device: int, time: float, position: Vec3, output=None) -> int:
        event_id = self._next_id
        self._next_id += 1
        self._es.events.append((event_id, device, time, position))
        self._es.outputs.append(output)
        return event_id

    def set_output(self, event_id: int, output) -> None:
        self._es.outputs[event_id] = output

    def add_edge(self, src: int, dst: int) -> None:
        self._es.edges.append((src, dst))

    def structure(self) -> EventStructure:
        return self._es


def check_adhering(es: EventStructure, devices, topology, window) -> bool:
    """True iff, inside the window, every event's incoming edges are exactly
    the most recent prior events of its topological neighbours (plus its own
    previous event), and every device has events in the window.

    topology maps each device to its neighbour set (self-loops implicit).
    window is a (t0, t1) half-open interval.
    """
    t0, t1 = window
    per_device = es.device_events()
    for dev in devices:
        times = per_device.get(dev, [])
        if not any(t0 <= t < t1 for t, _ in times):
            return False

    incoming: dict = {}
    for src, dst in es.edges:
        incoming.setdefault(dst, set()).add(src)

    times_by_dev = {
        dev: [t for t, _ in lst] for dev, lst in per_device.items()
    }
    ids_by_dev = {dev: [e for _, e in lst] for dev, lst in per_device.items()}

    def last_event_before(dev: int, t: float):
        times = times_by_dev.get(dev)
        if not times:
            return None
        i = bisect_left(times, t)
        if i == 0:
            return None
        return ids_by_dev[dev][i - 1]

    for event_id, dev, t, _pos in es.events:
        if not (t0 <= t < t1) or dev not in devices:
            continue
        expected = set()
        for other in set(topology.get(dev, ())) | {dev}:
            prior = last_event_before(other, t)
            if prior is not None:
                expected.add(prior)
        if incoming.get(event_id, set()) != expected:
            return False
    return True


def _values_equal(a, b, tol: float) -> bool:
    if isinstance(a, bool) or isinstance(b, bool):
        return a is b
    if isinstance(a, float) or isinstance(b, float):
        if not isinstance(a, (int, float)) or not isinstance(b, (int, float)):
            return False
        if math.isinf(a) or math.isinf(b):
            return a == b
        return abs(a - b) <= tol
    if isinstance(a, tuple) and isinstance(b, tuple):
        return len(a) == len(b) and all(
            _values_equal(x, y, tol) for x, y in zip(a, b)
        )
    if isinstance(a, Vec3) and isinstance(b, Vec3):
        return a.distance_to(b) <= tol
    return a == b


def detect_convergence(es: EventStructure, outputs, horizon: int, tol: float = 1e-6):
    """Per-device limit value if the last `horizon` outputs agree, else
    NOT_CONVERGED.  outputs maps event_id -> value (e.g. es.outputs)."""
    per_device = es.device_events()
    result = {}
    for dev, lst in per_device.items():
        if len(lst) < horizon:
            raise ValueError(f"device {dev} has fewer than {horizon} events")
        tail = [outputs[event_id] for _, event_id in lst[-horizon:]]
        limit = tail[-1]
        if all(_values_equal(v, limit, tol) for v in tail):
            result[dev] = limit
        else:
            result[dev] = NOT_CONVERGED
    return result
