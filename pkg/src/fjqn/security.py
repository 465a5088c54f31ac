"""Six-stage security-operations pipeline and its performance ratio.

The built-in model chains detection of an attack into parallel integrity
and vulnerability analyses, recovery and countermeasure work, and a final
system modification stage. Operational quality is summarized by the ratio
of the recovery cycle time (how long a full response takes, measured with
the inter-attack gap forced to zero) to the attack cycle time (the mean
gap between consecutive detections).
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from .dynamics import (
    CycleTimeEstimate,
    analytic_cycle_time,
    estimate_cycle_time,
    make_sampler,
)
from .network import NetworkError, NetworkSpec, NodeSpec, validate
from .timing import DistributionSpec

PIPELINE_ARCS = ((1, 2), (1, 3), (2, 4), (3, 4), (3, 5), (4, 6), (5, 6))

PIPELINE_LABELS = (
    "security attacks detection",
    "software and data integrity analysis",
    "vulnerabilities analysis",
    "software and data recovery procedures",
    "development of countermeasures",
    "security system modification",
)

DEFAULT_MEAN_TIMES = (10.0, 5.0, 4.0, 3.0, 6.0, 2.0)


@dataclass(frozen=True, slots=True)
class SecurityModel:
    """A validated network with one node designated as the attack arrival."""

    network: NetworkSpec
    arrival_node: int = 1

    def __post_init__(self):
        validate(self.network)
        ids = {nd.id for nd in self.network.nodes}
        if self.arrival_node not in ids:
            raise NetworkError(f"arrival node {self.arrival_node} not in network")

    @property
    def n(self) -> int:
        return self.network.n

    def recovery_nodes(self) -> tuple[int, ...]:
        return tuple(i for i in sorted(nd.id for nd in self.network.nodes)
                     if i != self.arrival_node)

    def timing(self, node_id: int) -> DistributionSpec:
        return self.network.node(node_id).timing

    def scaled(self, factor: float) -> "SecurityModel":
        """Same pipeline with every service law's time scale multiplied."""
        nodes = tuple(replace(nd, timing=nd.timing.scaled(factor))
                      for nd in self.network.nodes)
        return SecurityModel(NetworkSpec(nodes, self.network.arcs), self.arrival_node)


@dataclass(frozen=True, slots=True)
class PerformanceReport:
    """Attack/recovery cycle times, their ratio, and the bottleneck order."""

    attack_cycle_time: float
    recovery_cycle_time: float
    ratio: float | None
    bottleneck_ranking: tuple[int, ...]
    warnings: tuple[str, ...]
    mode: str
    estimate: CycleTimeEstimate | None = None


def builtin_model(timings=None) -> SecurityModel:
    """The fixed six-stage pipeline; timings default to exponential laws
    with means (10, 5, 4, 3, 6, 2)."""
    if timings is None:
        timings = tuple(DistributionSpec.exponential(m) for m in DEFAULT_MEAN_TIMES)
    timings = tuple(timings)
    if len(timings) != 6:
        raise ValueError("built-in model needs exactly six timing laws")
    nodes = tuple(NodeSpec(i + 1, PIPELINE_LABELS[i], timings[i]) for i in range(6))
    return SecurityModel(validate(NetworkSpec(nodes, PIPELINE_ARCS)), arrival_node=1)


def attack_cycle_time(model: SecurityModel) -> float:
    """Mean time between consecutive attack arrivals."""
    return model.timing(model.arrival_node).mean()


def max_traffic_sampler(model: SecurityModel, seed: int = 0,
                        coupling: str = "independent", shock_weight: float = 0.0):
    """Sampler with the arrival node's time forced to zero (back-to-back
    attacks), so the network's own cycle time measures pure recovery work."""
    sampler = make_sampler(model.network, seed=seed, coupling=coupling,
                           shock_weight=shock_weight)
    return sampler.set_node_to_zero(model.arrival_node)


def recovery_cycle_estimate(model: SecurityModel, cycles: int = 100_000,
                            replications: int = 10, seed: int = 0,
                            coupling: str = "independent",
                            shock_weight: float = 0.0) -> CycleTimeEstimate:
    """Monte Carlo recovery cycle time under the maximum-traffic regime."""
    sampler = max_traffic_sampler(model, seed=seed, coupling=coupling,
                                  shock_weight=shock_weight)
    return estimate_cycle_time(model.network, sampler, cycles, replications)


def recovery_cycle_time(model: SecurityModel, mode: str = "analytic",
                        **simulation_options) -> float:
    """Time to fully process one attack: max mean over the recovery nodes
    (analytic) or the simulated max-traffic cycle time (simulated)."""
    if mode == "analytic":
        return max(model.timing(i).mean() for i in model.recovery_nodes())
    if mode == "simulated":
        return recovery_cycle_estimate(model, **simulation_options).gamma_hat
    raise ValueError(f"unknown mode {mode!r}")


def bottleneck_ranking(model: SecurityModel) -> tuple[int, ...]:
    """Recovery nodes ordered by descending mean service time (improvement
    priority); ties broken by ascending node id."""
    return tuple(sorted(model.recovery_nodes(),
                        key=lambda i: (-model.timing(i).mean(), i)))


def performance_ratio(model: SecurityModel, mode: str = "analytic",
                      **simulation_options) -> PerformanceReport:
    """Full report: cycle times, their ratio, ranking, and sanity warnings.

    The ratio reads as the long-run fraction of time spent in recovery only
    when recovery fits inside the attack gap; a warning flags the reading
    breaking down, and a zero attack cycle time leaves the ratio undefined
    rather than infinite.
    """
    t_attack = attack_cycle_time(model)
    estimate = None
    if mode == "analytic":
        t_recovery = recovery_cycle_time(model, "analytic")
    elif mode == "simulated":
        estimate = recovery_cycle_estimate(model, **simulation_options)
        t_recovery = estimate.gamma_hat
    else:
        raise ValueError(f"unknown mode {mode!r}")
    warnings: list[str] = []
    if t_attack > 0:
        ratio = t_recovery / t_attack
        if t_recovery > t_attack:
            warnings.append(
                "recovery cycle time exceeds attack cycle time; the ratio no "
                "longer reads as a busy-time fraction")
    else:
        ratio = None
        warnings.append("attack cycle time is zero; ratio undefined")
    return PerformanceReport(
        attack_cycle_time=t_attack,
        recovery_cycle_time=t_recovery,
        ratio=ratio,
        bottleneck_ranking=bottleneck_ranking(model),
        warnings=tuple(warnings),
        mode=mode,
        estimate=estimate,
    )


def network_cycle_time(model: SecurityModel) -> float:
    """Closed-form cycle time of the whole pipeline (arrival included)."""
    return analytic_cycle_time(model.network)
