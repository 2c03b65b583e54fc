from .config import ConfigError, ScenarioConfig, load_scenario_file
from .metrics import (
    angular_alignment,
    distinct_choices,
    formation_error,
    leader_distance,
    min_pairwise_distance,
    nearest4_distance,
    shadow_targets,
    vertical_variation,
)
from .rescue import (
    DangerSite,
    RescueEnvironment,
    RescueParams,
    build_rescue_program,
    intra_team_distance,
)
from .runner import mean_rows, rows_to_csv, run_scenario, sample_replication
from .scenarios import (
    DEFAULT_SCENARIOS,
    BuiltScenario,
    build,
    default_scenario,
    jittered_lattice,
    uniform_placement,
)

__all__ = [
    "BuiltScenario",
    "ConfigError",
    "DEFAULT_SCENARIOS",
    "DangerSite",
    "RescueEnvironment",
    "RescueParams",
    "ScenarioConfig",
    "angular_alignment",
    "build",
    "build_rescue_program",
    "default_scenario",
    "distinct_choices",
    "formation_error",
    "intra_team_distance",
    "jittered_lattice",
    "leader_distance",
    "load_scenario_file",
    "mean_rows",
    "min_pairwise_distance",
    "nearest4_distance",
    "rows_to_csv",
    "run_scenario",
    "sample_replication",
    "shadow_targets",
    "uniform_placement",
    "vertical_variation",
]
