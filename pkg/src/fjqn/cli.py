"""Command-line front end: load a network, analyze or simulate, emit reports.

Network files are JSON documents:

    {
      "nodes": [
        {"id": 1, "label": "intake",
         "distribution": {"family": "exponential", "mean": 10.0}},
        ...
      ],
      "arcs": [[1, 2], [1, 3]],
      "arrival_node": 1
    }

Distribution forms: {"family": "deterministic", "value": v},
{"family": "exponential", "mean": m}, {"family": "uniform", "low": a,
"high": b}, {"family": "erlang", "shape": k, "mean": m}. The reserved
network name "paper-fig3" selects the built-in six-stage security model.
All randomness flows from --seed; identical configurations produce
byte-identical reports.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from dataclasses import dataclass
from pathlib import Path

from .checks import check_oracle_equivalence, check_tandem_bound
from .dynamics import estimate_cycle_time, make_sampler, simulate
from .network import NetworkError, NetworkSpec, NodeSpec, topological_renumber, validate
from .security import SecurityModel, builtin_model, network_cycle_time, performance_ratio
from .timing import DistributionSpec, derive_seed

RESERVED_MODEL_NAME = "paper-fig3"

_NORM_SAMPLES = 200  # target count of norm samples in simulate reports


class CliError(ValueError):
    """Input problem reportable to the user (bad file, bad schema)."""


@dataclass(frozen=True, slots=True)
class RunConfig:
    """One CLI invocation's worth of settings."""

    network: str
    mode: str = "analytic"
    steps: int = 100_000
    replications: int = 10
    seed: int = 0
    max_traffic: bool = False
    output: str = "-"
    format: str = "json"


def _require(obj: dict, key: str, where: str):
    if key not in obj:
        raise CliError(f"{where}: missing required field {key!r}")
    return obj[key]


def _parse_distribution(obj, where: str) -> DistributionSpec:
    if not isinstance(obj, dict):
        raise CliError(f"{where}: distribution must be an object")
    family = _require(obj, "family", where)
    try:
        if family == "deterministic":
            return DistributionSpec.deterministic(_require(obj, "value", where))
        if family == "exponential":
            return DistributionSpec.exponential(_require(obj, "mean", where))
        if family == "uniform":
            return DistributionSpec.uniform(_require(obj, "low", where),
                                            _require(obj, "high", where))
        if family == "erlang":
            return DistributionSpec.erlang(_require(obj, "shape", where),
                                           _require(obj, "mean", where))
    except CliError:
        raise
    except (TypeError, ValueError) as exc:
        raise CliError(f"{where}: {exc}") from exc
    raise CliError(f"{where}: unknown distribution family {family!r}")


def _parse_network_json(doc, source: str) -> tuple[NetworkSpec, int]:
    if not isinstance(doc, dict):
        raise CliError(f"{source}: top level must be a JSON object")
    raw_nodes = _require(doc, "nodes", source)
    if not isinstance(raw_nodes, list) or not raw_nodes:
        raise CliError(f"{source}: 'nodes' must be a non-empty list")
    nodes = []
    for idx, nd in enumerate(raw_nodes):
        where = f"{source}: nodes[{idx}]"
        if not isinstance(nd, dict):
            raise CliError(f"{where}: node must be an object")
        node_id = _require(nd, "id", where)
        if not isinstance(node_id, int):
            raise CliError(f"{where}: 'id' must be an integer")
        label = nd.get("label", f"node {node_id}")
        dist = _parse_distribution(_require(nd, "distribution", where), where)
        nodes.append(NodeSpec(node_id, str(label), dist))
    raw_arcs = doc.get("arcs", [])
    if not isinstance(raw_arcs, list):
        raise CliError(f"{source}: 'arcs' must be a list")
    arcs = []
    for idx, arc in enumerate(raw_arcs):
        if (not isinstance(arc, (list, tuple)) or len(arc) != 2
                or not all(isinstance(v, int) for v in arc)):
            raise CliError(f"{source}: arcs[{idx}] must be a pair of integers")
        arcs.append((arc[0], arc[1]))
    arrival = doc.get("arrival_node", 1)
    if not isinstance(arrival, int):
        raise CliError(f"{source}: 'arrival_node' must be an integer")
    return NetworkSpec(tuple(nodes), tuple(arcs)), arrival


def load_network(path_or_name: str) -> tuple[SecurityModel, dict[int, int]]:
    """Resolve a file path or reserved name to a validated, renumbered model.

    Returns the model plus the old-id -> new-id permutation applied (the
    identity for already-sorted inputs and for the built-in model).
    """
    if path_or_name == RESERVED_MODEL_NAME:
        model = builtin_model()
        return model, {i: i for i in range(1, 7)}
    path = Path(path_or_name)
    try:
        text = path.read_text()
    except OSError as exc:
        raise CliError(f"cannot read network file {path_or_name!r}: {exc}") from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CliError(f"{path_or_name}: not valid JSON: {exc}") from exc
    spec, arrival = _parse_network_json(doc, path_or_name)
    try:
        validate(spec)
        renumbered, mapping = topological_renumber(spec)
        if arrival not in mapping:
            raise NetworkError(f"arrival node {arrival} not in network")
    except NetworkError as exc:
        raise CliError(f"{path_or_name}: {exc}") from exc
    return SecurityModel(renumbered, mapping[arrival]), mapping


def _node_summaries(model: SecurityModel) -> list[dict]:
    out = []
    for nd in sorted(model.network.nodes, key=lambda nd: nd.id):
        out.append({
            "id": nd.id,
            "label": nd.label,
            "family": nd.timing.family,
            "params": [float(p) for p in nd.timing.params],
            "mean": float(nd.timing.mean()),
        })
    return out


def _base_report(model: SecurityModel, mapping: dict[int, int],
                 config: RunConfig) -> dict:
    report = performance_ratio(model, "analytic")
    doc = {
        "network": config.network,
        "mode": config.mode,
        "seed": config.seed,
        "max_traffic": config.max_traffic,
        "arrival_node": model.arrival_node,
        "nodes": _node_summaries(model),
        "cycle_time": float(network_cycle_time(model)),
        "attack_cycle_time": float(report.attack_cycle_time),
        "recovery_cycle_time": float(report.recovery_cycle_time),
        "R": None if report.ratio is None else float(report.ratio),
        "bottleneck_ranking": [int(i) for i in report.bottleneck_ranking],
        "warnings": list(report.warnings),
    }
    if any(old != new for old, new in mapping.items()):
        doc["renumbering"] = {str(old): int(new) for old, new in sorted(mapping.items())}
    return doc


def _simulate_report(model: SecurityModel, mapping: dict[int, int],
                     config: RunConfig) -> dict:
    doc = _base_report(model, mapping, config)
    sampler = make_sampler(model.network, seed=config.seed)
    if config.max_traffic:
        sampler = sampler.set_node_to_zero(model.arrival_node)
    estimate = estimate_cycle_time(model.network, sampler, config.steps,
                                   config.replications)
    stride = max(1, config.steps // _NORM_SAMPLES)
    trace = simulate(model.network, sampler.reseeded(derive_seed(config.seed, 0)),
                     config.steps, norm_stride=stride)
    doc.update({
        "steps": config.steps,
        "replications": config.replications,
        "gamma_hat": float(estimate.gamma_hat),
        "gamma_stderr": float(estimate.stderr),
        "per_replication": [float(g) for g in estimate.per_replication],
        "norm_samples": [[int(k), float(v)]
                         for k, v in zip(trace.norm_cycles, trace.norms)],
    })
    return doc


def _verify_report(model: SecurityModel, mapping: dict[int, int],
                   config: RunConfig) -> dict:
    sampler = make_sampler(model.network, seed=config.seed)
    reports = [
        check_oracle_equivalence(model.network, sampler, trials=20, cycles=50),
        check_tandem_bound(model.network, sampler, trials=50),
    ]
    return {
        "network": config.network,
        "mode": "verify",
        "seed": config.seed,
        "checks": [
            {
                "name": rep.name,
                "passed": int(rep.passed),
                "failed": int(rep.failed),
                "details": list(rep.details),
            }
            for rep in reports
        ],
        "ok": all(rep.ok for rep in reports),
    }


def _csv_text(doc: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    if doc["mode"] == "verify":
        writer.writerow(["record", "check", "passed", "failed", "ok"])
        for chk in doc["checks"]:
            writer.writerow(["check", chk["name"], chk["passed"], chk["failed"],
                             chk["failed"] == 0])
        writer.writerow(["summary", "", sum(c["passed"] for c in doc["checks"]),
                         sum(c["failed"] for c in doc["checks"]), doc["ok"]])
        return buf.getvalue()
    columns = ["record", "replication", "gamma", "cycle_time",
               "attack_cycle_time", "recovery_cycle_time", "R",
               "gamma_hat", "gamma_stderr", "bottleneck_ranking", "warnings"]
    writer.writerow(columns)
    for idx, gamma in enumerate(doc.get("per_replication", [])):
        writer.writerow(["replication", idx, gamma] + [""] * (len(columns) - 3))
    writer.writerow([
        "summary", "", "",
        doc["cycle_time"], doc["attack_cycle_time"], doc["recovery_cycle_time"],
        "" if doc["R"] is None else doc["R"],
        doc.get("gamma_hat", ""), doc.get("gamma_stderr", ""),
        " ".join(str(i) for i in doc["bottleneck_ranking"]),
        "; ".join(doc["warnings"]),
    ])
    return buf.getvalue()


def _emit(doc: dict, config: RunConfig) -> None:
    if config.format == "json":
        text = json.dumps(doc, indent=2, sort_keys=True) + "\n"
    else:
        text = _csv_text(doc)
    if config.output == "-":
        sys.stdout.write(text)
    else:
        Path(config.output).write_text(text)


def run(config: RunConfig) -> int:
    """Execute one configuration; returns the process exit code."""
    if config.steps < 1:
        raise CliError("--steps must be >= 1")
    if config.replications < 1:
        raise CliError("--replications must be >= 1")
    if config.mode not in ("analytic", "simulate", "verify"):
        raise CliError(f"unknown mode {config.mode!r}")
    if config.format not in ("json", "csv"):
        raise CliError(f"unknown format {config.format!r}")
    model, mapping = load_network(config.network)
    if config.mode == "analytic":
        doc = _base_report(model, mapping, config)
    elif config.mode == "simulate":
        doc = _simulate_report(model, mapping, config)
    else:
        doc = _verify_report(model, mapping, config)
    _emit(doc, config)
    if config.mode == "verify" and not doc["ok"]:
        return 1
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fjqn",
        description="Analyze or simulate an acyclic fork-join service network.",
    )
    parser.add_argument("--network", required=True,
                        help=f"network JSON file, or {RESERVED_MODEL_NAME!r} "
                             "for the built-in six-stage security model")
    parser.add_argument("--mode", choices=("analytic", "simulate", "verify"),
                        default="analytic", help="what to compute (default: analytic)")
    parser.add_argument("--steps", type=int, default=100_000,
                        help="cycles per replication in simulate mode (default: 100000)")
    parser.add_argument("--replications", type=int, default=10,
                        help="independent simulation replications (default: 10)")
    parser.add_argument("--seed", type=int, default=0,
                        help="master seed; the only entropy source (default: 0)")
    parser.add_argument("--max-traffic", action="store_true",
                        help="force the arrival node's service times to zero in "
                             "simulation, so gamma_hat estimates the recovery cycle time")
    parser.add_argument("--output", default="-",
                        help="report destination file, or - for stdout (default: -)")
    parser.add_argument("--format", choices=("json", "csv"), default="json",
                        help="report format (default: json)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    config = RunConfig(
        network=args.network,
        mode=args.mode,
        steps=args.steps,
        replications=args.replications,
        seed=args.seed,
        max_traffic=args.max_traffic,
        output=args.output,
        format=args.format,
    )
    try:
        return run(config)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NetworkError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    raise SystemExit(main())
