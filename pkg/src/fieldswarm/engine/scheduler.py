"""Round schedules: which device fires next, and when.

All schedules are fair (every alive device keeps executing, one round per
period) and deterministic.  The default staggers devices by a per-device
phase drawn once from the seeded rng, so rounds interleave without being
lock-stepped.
"""

from __future__ import annotations

import heapq
import random


class _PhasedSchedule:
    """Heap of (next_round_time, device_id); phases fixed at attach time."""

    def __init__(self):
        self._heap: list = []

    def phases(self, world) -> dict:
        raise NotImplementedError

    def attach(self, world) -> None:
        self._heap = []
        for dev_id, phase in self.phases(world).items():
            heapq.heappush(self._heap, (phase, dev_id))

    def pop(self):
        return heapq.heappop(self._heap)

    def peek_time(self) -> float:
        return self._heap[0][0]

    def push(self, time: float, dev_id: int) -> None:
        heapq.heappush(self._heap, (time, dev_id))

    def __bool__(self) -> bool:
        return bool(self._heap)


class JitteredRoundRobin(_PhasedSchedule):
    """Fair round-robin with per-device phase jitter drawn once."""

    def __init__(self, seed: int = 0):
        super().__init__()
        self.seed = seed

    def phases(self, world) -> dict:
        rng = random.Random(f"{self.seed}/schedule")
        return {
            dev_id: rng.random() * world.round_period
            for dev_id in sorted(world.devices)
        }


class EvenSweep(_PhasedSchedule):
    """Devices evenly phased across the period, in id order (or reversed)."""

    def __init__(self, reverse: bool = False):
        super().__init__()
        self.reverse = reverse

    def phases(self, world) -> dict:
        ids = sorted(world.devices, reverse=self.reverse)
        n = max(len(ids), 1)
        return {
            dev_id: (rank / n) * world.round_period for rank, dev_id in enumerate(ids)
        }
