"""Max-plus simulator for acyclic fork-join service networks.

Service completion times in an acyclic fork-join network satisfy a linear
recurrence over the (max,+) semiring; this package builds the per-cycle
transition matrices, iterates them, estimates the long-run cycle time, and
applies the machinery to a six-stage security-operations model with an
attack/recovery performance ratio.
"""

from .checks import (
    CheckReport,
    check_oracle_equivalence,
    check_tandem_bound,
)
from .dynamics import (
    CycleTimeEstimate,
    SimulationResult,
    TransitionMatrix,
    analytic_cycle_time,
    estimate_cycle_time,
    make_sampler,
    network_transition,
    simulate,
    step,
    tandem_transition,
    trajectory_from_table,
)
from .maxplus import EPS, MaxPlusMatrix, mat_leq, mat_oplus, mat_otimes, mat_power, norm, oplus, otimes
from .network import (
    NetworkError,
    NetworkSpec,
    NodeSpec,
    SupportMatrix,
    longest_path_length,
    support_matrix,
    tandem_network,
    tandem_support_matrix,
    topological_renumber,
    validate,
)
from .oracle import unfolded_completion_times
from .security import (
    PerformanceReport,
    SecurityModel,
    attack_cycle_time,
    bottleneck_ranking,
    builtin_model,
    max_traffic_sampler,
    performance_ratio,
    recovery_cycle_estimate,
    recovery_cycle_time,
)
from .timing import DistributionSpec, ScenarioSampler, counter_uniforms, derive_seed

__version__ = "0.1.0"

__all__ = [
    "EPS",
    "CheckReport",
    "CycleTimeEstimate",
    "DistributionSpec",
    "MaxPlusMatrix",
    "NetworkError",
    "NetworkSpec",
    "NodeSpec",
    "PerformanceReport",
    "ScenarioSampler",
    "SecurityModel",
    "SimulationResult",
    "SupportMatrix",
    "TransitionMatrix",
    "analytic_cycle_time",
    "attack_cycle_time",
    "bottleneck_ranking",
    "builtin_model",
    "check_oracle_equivalence",
    "check_tandem_bound",
    "counter_uniforms",
    "derive_seed",
    "estimate_cycle_time",
    "longest_path_length",
    "make_sampler",
    "mat_leq",
    "mat_oplus",
    "mat_otimes",
    "mat_power",
    "max_traffic_sampler",
    "network_transition",
    "norm",
    "oplus",
    "otimes",
    "performance_ratio",
    "recovery_cycle_estimate",
    "recovery_cycle_time",
    "simulate",
    "step",
    "support_matrix",
    "tandem_network",
    "tandem_support_matrix",
    "tandem_transition",
    "topological_renumber",
    "trajectory_from_table",
    "unfolded_completion_times",
    "validate",
]
