"""Energy-minimal scheduling of independent jobs on heterogeneous machines.

Machines are characterized by working power, idle power, and speed.  For
divisible work the exact solvers find the energy-minimal working set and
allocation in linear time after sorting; for indivisible jobs the
longest-job-first schedulers come with certified worst-case energy ratios.
Exhaustive oracles verify both on small instances.
"""

from .divisible import (
    DivisibleSolution,
    IncompatibilityReport,
    OrderingAnomaly,
    admission_gain_identical,
    incompatibility_report,
    optimal_r_identical,
    optimal_working_set_different,
    ordering_anomalies,
    solve_divisible,
    working_energy_ratio,
)
from .errors import (
    DimensionMismatchError,
    DuplicateIdError,
    EmptyFleetError,
    EmptyScheduleError,
    EmschedError,
    FleetTooLargeError,
    IdleExceedsWorkingWarning,
    InstanceTooLargeError,
    NegativeIdleTimeError,
    NegativePowerError,
    NoJobsError,
    NonPositiveSpeedError,
    NonPositiveWeightError,
    ResourceLimitError,
    ScenarioParseError,
    UndefinedRatioError,
    UnknownMachineError,
    ValidationError,
    WorkingCountError,
)
from .estimators import DivisibleScheduler, LptScheduler
from .generate import random_jobs, random_machines, random_scenario
from .model import (
    EnergyBreakdown,
    Fleet,
    Job,
    Machine,
    MachineAssignment,
    MachineEnergy,
    Regime,
    Schedule,
    energy_divisible_closed_form,
    energy_of_schedule,
    makespan_of_schedule,
    validate_fleet,
    validate_jobs,
)
from .nondivisible import (
    LPT_DIFFERENT_SPEED_ASYMPTOTIC,
    BoundCertificate,
    IdealTarget,
    LptSolution,
    energy_bound_different,
    energy_bound_identical,
    ideal_target_different,
    ideal_target_identical,
    schedule_lpt_different,
    schedule_lpt_identical,
    solve_nondivisible,
)
from .oracle import (
    OracleResult,
    is_prefix_mask,
    mask_to_positions,
    oracle_divisible,
    oracle_nondivisible,
)
from .ordering import (
    IndexedFleet,
    assume_indexed,
    index_different,
    index_fleet,
    index_identical,
)
from .scenario import Scenario, format_scenario, load_scenario, parse_scenario

__version__ = "0.1.0"

__all__ = [
    "BoundCertificate",
    "DimensionMismatchError",
    "DivisibleScheduler",
    "DivisibleSolution",
    "DuplicateIdError",
    "EmptyFleetError",
    "EmptyScheduleError",
    "EmschedError",
    "EnergyBreakdown",
    "Fleet",
    "FleetTooLargeError",
    "IdealTarget",
    "IdleExceedsWorkingWarning",
    "IncompatibilityReport",
    "IndexedFleet",
    "InstanceTooLargeError",
    "Job",
    "LptScheduler",
    "LptSolution",
    "LPT_DIFFERENT_SPEED_ASYMPTOTIC",
    "Machine",
    "MachineAssignment",
    "MachineEnergy",
    "NegativeIdleTimeError",
    "NegativePowerError",
    "NoJobsError",
    "NonPositiveSpeedError",
    "NonPositiveWeightError",
    "OracleResult",
    "OrderingAnomaly",
    "Regime",
    "ResourceLimitError",
    "Scenario",
    "ScenarioParseError",
    "Schedule",
    "UndefinedRatioError",
    "UnknownMachineError",
    "ValidationError",
    "WorkingCountError",
    "admission_gain_identical",
    "assume_indexed",
    "energy_bound_different",
    "energy_bound_identical",
    "energy_divisible_closed_form",
    "energy_of_schedule",
    "format_scenario",
    "ideal_target_different",
    "ideal_target_identical",
    "incompatibility_report",
    "index_different",
    "index_fleet",
    "index_identical",
    "is_prefix_mask",
    "load_scenario",
    "makespan_of_schedule",
    "mask_to_positions",
    "optimal_r_identical",
    "optimal_working_set_different",
    "oracle_divisible",
    "oracle_nondivisible",
    "ordering_anomalies",
    "parse_scenario",
    "random_jobs",
    "random_machines",
    "random_scenario",
    "schedule_lpt_different",
    "schedule_lpt_identical",
    "solve_divisible",
    "solve_nondivisible",
    "validate_fleet",
    "validate_jobs",
    "working_energy_ratio",
]
