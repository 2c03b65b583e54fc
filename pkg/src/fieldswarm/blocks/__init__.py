from .consensus import PreferenceState, argmax, certainty, consensus
from .flocking import (
    ONE_HOP,
    NeighbourhoodQuery,
    alignment,
    cohesion,
    cucker_smale,
    reynolds,
    separation,
    vicsek,
    within_range,
)
from .movement import (
    brownian,
    explore,
    go_to,
    maintain_trajectory,
    maintain_until,
    obstacle_avoidance,
)
from .planning import Mission, Plan, execute_once, execute_repeat, run_mission
from .resilient import C, G, S, broadcast, gradient
from .structure import (
    FormationAssignment,
    FormationPattern,
    align_with_leader,
    assign_slots,
    centered_circle,
    circle_offsets,
    form_shape,
    in_formation,
    line,
    line_offsets,
    sink_at,
    v_offsets,
    v_shape,
)
from .teams import Team, is_team_formed, team_formation

__all__ = [
    "C",
    "G",
    "S",
    "FormationAssignment",
    "FormationPattern",
    "Mission",
    "NeighbourhoodQuery",
    "ONE_HOP",
    "Plan",
    "PreferenceState",
    "Team",
    "align_with_leader",
    "alignment",
    "argmax",
    "assign_slots",
    "broadcast",
    "brownian",
    "centered_circle",
    "certainty",
    "circle_offsets",
    "cohesion",
    "consensus",
    "cucker_smale",
    "execute_once",
    "execute_repeat",
    "explore",
    "form_shape",
    "go_to",
    "gradient",
    "in_formation",
    "is_team_formed",
    "line",
    "line_offsets",
    "maintain_trajectory",
    "maintain_until",
    "obstacle_avoidance",
    "reynolds",
    "run_mission",
    "separation",
    "sink_at",
    "team_formation",
    "v_offsets",
    "v_shape",
    "vicsek",
    "within_range",
]
