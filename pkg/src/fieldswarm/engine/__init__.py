from .devices import (
    LONG_STANDING,
    ROUND_BASED,
    ActuationGoal,
    DeviceState,
    FaultConfig,
    InboxEntry,
    World,
)
from .events import (
    NOT_CONVERGED,
    EventRecorder,
    EventStructure,
    check_adhering,
    detect_convergence,
)
from .runner import (
    apply_kill,
    apply_kinematics,
    build_context,
    deliver,
    perceived_position,
    run_steps,
    run_sweeps,
    run_until,
    step,
)
from .scheduler import EvenSweep, JitteredRoundRobin

__all__ = [
    "ActuationGoal",
    "DeviceState",
    "EventRecorder",
    "EventStructure",
    "EvenSweep",
    "FaultConfig",
    "InboxEntry",
    "JitteredRoundRobin",
    "LONG_STANDING",
    "NOT_CONVERGED",
    "ROUND_BASED",
    "World",
    "apply_kill",
    "apply_kinematics",
    "build_context",
    "check_adhering",
    "deliver",
    "detect_convergence",
    "perceived_position",
    "run_steps",
    "run_sweeps",
    "run_until",
    "step",
]
