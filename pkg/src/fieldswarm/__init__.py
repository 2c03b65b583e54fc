"""fieldswarm: field-based swarm programming and batch simulation.

A program is a function ``vm -> value`` built from the constructs in
fieldswarm.constructs and the behaviour blocks in fieldswarm.blocks; the
engine in fieldswarm.engine runs it in deterministic asynchronous rounds,
and fieldswarm.harness reproduces the evaluation scenarios end to end.
"""

from .constructs import (
    AlignmentBreak,
    EvaluationError,
    VM,
    aligned,
    branch,
    evaluate,
    foldhood,
    foldhood_plus,
    mid,
    mux,
    nbr,
    nbr_range,
    neighbour_ids,
    neighbouring_field,
    rep,
    sense,
)
from .context import Context
from .exports import ABSENT, ExportTree
from .vectors import Position, Vec3

__all__ = [
    "ABSENT",
    "AlignmentBreak",
    "Context",
    "EvaluationError",
    "ExportTree",
    "Position",
    "VM",
    "Vec3",
    "aligned",
    "branch",
    "evaluate",
    "foldhood",
    "foldhood_plus",
    "mid",
    "mux",
    "nbr",
    "nbr_range",
    "neighbour_ids",
    "neighbouring_field",
    "rep",
    "sense",
]
