"""Round input for one device: the immutable view a program evaluates against."""

from __future__ import annotations

from dataclasses import dataclass, field

from .exports import EMPTY_EXPORT, ExportTree


@dataclass(slots=True)
class Context:
    """One device's round input.

    neighbour_exports holds the freshest unexpired export of every alive
    in-range sender, plus this device's own previous export under its own id
    (the self-neighbour).  nbr_distances maps the same keys to the distance
    between the perceived positions of the two endpoints at their latest
    events (0 for self).
    """

    self_id: int
    time: float = 0.0
    previous_export: ExportTree | None = None
    neighbour_exports: dict = field(default_factory=dict)
    sensors: dict = field(default_factory=dict)
    nbr_distances: dict = field(default_factory=dict)
    rng_seed: str = "0"
    round_period: float = 1.0

    @staticmethod
    def local(self_id: int = 0, **kwargs) -> "Context":
        """Context with no neighbours beyond self (handy in tests)."""
        ctx = Context(self_id=self_id, **kwargs)
        prev = ctx.previous_export if ctx.previous_export is not None else EMPTY_EXPORT
        ctx.neighbour_exports.setdefault(self_id, prev)
        ctx.nbr_distances.setdefault(self_id, 0.0)
        return ctx
