#!/usr/bin/env python3
"""Stress the engine's verification suites over many random networks.

For each random DAG: (a) the matrix engine must reproduce the brute-force
completion-time oracle, and (b) the network transition matrix must be
dominated entrywise by the tandem chain's transition matrix, along with
the three supporting power inequalities. Finishes with a Monte Carlo spot
check that the cycle time equals the maximum mean service time under both
the independent and common-shock couplings. Exits nonzero on any failure.
"""

import argparse
import random

from fjqn import (
    DistributionSpec,
    NetworkSpec,
    NodeSpec,
    ScenarioSampler,
    analytic_cycle_time,
    check_oracle_equivalence,
    check_tandem_bound,
    estimate_cycle_time,
    validate,
)


def random_dag(rng: random.Random, max_nodes: int,
               timing: DistributionSpec) -> NetworkSpec:
    """Random DAG with shuffled ids (arcs follow a hidden topological order)."""
    n = rng.randint(1, max_nodes)
    order = list(range(1, n + 1))
    rng.shuffle(order)
    arcs = [(order[i], order[j])
            for i in range(n) for j in range(i + 1, n) if rng.random() < 0.4]
    nodes = tuple(NodeSpec(i, f"n{i}", timing) for i in range(1, n + 1))
    return validate(NetworkSpec(nodes, tuple(arcs)))


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--networks", type=int, default=40)
    parser.add_argument("--trials", type=int, default=20,
                        help="sampled cycles checked per network")
    parser.add_argument("--max-nodes", type=int, default=8)
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--spot-cycles", type=int, default=50_000,
                        help="cycles for the closing Monte Carlo spot check")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    failures = 0
    for index in range(args.networks):
        spec = random_dag(rng, max_nodes=args.max_nodes,
                          timing=DistributionSpec.exponential(1.0 + rng.random() * 5))
        oracle = check_oracle_equivalence(spec, trials=args.trials, cycles=40,
                                          seed=rng.randint(0, 2**31))
        bound = check_tandem_bound(spec, trials=args.trials, seed=rng.randint(0, 2**31))
        status = "ok" if oracle.ok and bound.ok else "FAIL"
        if status == "FAIL":
            failures += 1
            for report in (oracle, bound):
                for line in report.details:
                    print(f"  network {index}: {report.name}: {line}")
        print(f"network {index:3d} (n={spec.n}): oracle {oracle.passed}/{args.trials}, "
              f"tandem bound {bound.passed}/{args.trials} -> {status}")

    print("\nMonte Carlo spot check: cycle time vs max of means")
    spot_rng = random.Random(args.seed + 1)
    for coupling, weight in (("independent", 0.0), ("common-shock", 0.6)):
        spec = random_dag(spot_rng, max_nodes=6,
                          timing=DistributionSpec.exponential(1.0))
        dists = tuple(DistributionSpec.exponential(1.0 + spot_rng.random() * 4)
                      for _ in range(spec.n))
        sampler = ScenarioSampler(dists, seed=args.seed, coupling=coupling,
                                  shock_weight=weight)
        target = analytic_cycle_time(spec, sampler)
        est = estimate_cycle_time(spec, sampler, args.spot_cycles, replications=3)
        gap = abs(est.gamma_hat - target) / target
        status = "ok" if gap < 0.03 else "FAIL"
        if status == "FAIL":
            failures += 1
        print(f"  {coupling:13s}: gamma_hat={est.gamma_hat:.4f} "
              f"target={target:.4f} rel.err={gap:.2%} -> {status}")

    if failures:
        print(f"\n{failures} failing suite(s)")
        return 1
    print("\nall suites passed")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
