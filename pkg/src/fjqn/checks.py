"""Self-verification suites: engine-vs-oracle agreement and tandem bounds.

Two independent ways of computing the same trajectories must agree, and
every acyclic network's transition matrix must be dominated entrywise by
the tandem chain's transition matrix over the same nodes. These checks run
on arbitrary loaded networks, so comparisons use a tight absolute
tolerance rather than exact equality (continuous service times make the
two code paths sum identical terms in different orders).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dynamics import make_sampler, network_transition, tandem_transition, trajectory_from_table
from .maxplus import MaxPlusMatrix, mat_leq, mat_oplus, mat_otimes, mat_power
from .network import (
    NetworkSpec,
    longest_path_length,
    support_matrix,
    tandem_support_matrix,
    topological_renumber,
)
from .oracle import unfolded_completion_times
from .timing import ScenarioSampler, derive_seed

ORACLE_TOLERANCE = 1e-9


@dataclass(frozen=True, slots=True)
class CheckReport:
    """Pass/fail tally for one verification suite."""

    name: str
    passed: int
    failed: int
    details: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.failed == 0


def check_oracle_equivalence(spec: NetworkSpec, sampler: ScenarioSampler | None = None,
                             trials: int = 20, cycles: int = 50, seed: int = 0,
                             tolerance: float = ORACLE_TOLERANCE) -> CheckReport:
    """Engine trajectories vs brute-force completion times on shared draws."""
    if sampler is None:
        sampler = make_sampler(spec, seed=seed)
    passed = failed = 0
    details: list[str] = []
    for trial in range(trials):
        table = sampler.reseeded(derive_seed(sampler.seed, trial)).sample_table(cycles)
        engine = trajectory_from_table(spec, table)
        oracle = unfolded_completion_times(spec, table)
        if np.allclose(engine, oracle, rtol=0.0, atol=tolerance):
            passed += 1
        else:
            failed += 1
            gap = float(np.abs(engine - oracle).max())
            details.append(f"trial {trial}: max deviation {gap:.3e}")
    return CheckReport("oracle-equivalence", passed, failed, tuple(details))


def _sum_of_powers(mat: MaxPlusMatrix, terms: int) -> MaxPlusMatrix:
    acc = mat
    total = mat
    for _ in range(terms - 1):
        acc = mat_otimes(acc, mat)
        total = mat_oplus(total, acc)
    return total


def support_chain_bound(G: MaxPlusMatrix, H: MaxPlusMatrix, n: int) -> bool:
    """G^q <= H + H^2 + ... + H^n for all 1 <= q <= n (renumbered G)."""
    bound = _sum_of_powers(H, n)
    return all(mat_leq(mat_power(G, q), bound) for q in range(1, n + 1))


def chain_power_bound(H: MaxPlusMatrix, T: MaxPlusMatrix, n: int) -> bool:
    """H^q (x) T <= (H (x) T)^q for all 2 <= q <= n, nonnegative diagonal T."""
    ht = mat_otimes(H, T)
    return all(
        mat_leq(mat_otimes(mat_power(H, q), T), mat_power(ht, q))
        for q in range(2, n + 1)
    )


def weighted_path_bound(G: MaxPlusMatrix, H: MaxPlusMatrix, T: MaxPlusMatrix,
                        n: int) -> bool:
    """(G (x) T)^q <= sum_{j=1..n} (H (x) T)^j for all 1 <= q <= n."""
    bound = _sum_of_powers(mat_otimes(H, T), n)
    gt = mat_otimes(G, T)
    return all(mat_leq(mat_power(gt, q), bound) for q in range(1, n + 1))


def check_tandem_bound(spec: NetworkSpec, sampler: ScenarioSampler | None = None,
                       trials: int = 50, seed: int = 0) -> CheckReport:
    """Network transition dominated by the tandem transition, per cycle draw.

    The network is renumbered first (the bound presumes arcs run from lower
    to higher index); the sampler's node order follows the renumbering.
    """
    renum, mapping = topological_renumber(spec)
    if sampler is None:
        sampler = make_sampler(renum, seed=seed)
    else:
        order = sorted(mapping, key=lambda old: mapping[old])
        dists = tuple(sampler.distributions[old - 1] for old in order)
        sampler = ScenarioSampler(dists, seed=sampler.seed, coupling=sampler.coupling,
                                  shock_weight=sampler.shock_weight)
    n = renum.n
    G = support_matrix(renum).matrix
    H = tandem_support_matrix(n).matrix
    p = longest_path_length(renum)
    passed = failed = 0
    details: list[str] = []
    for trial in range(trials):
        T = sampler.reseeded(derive_seed(sampler.seed, trial)).sample_cycle(1)
        network = network_transition(T, G, p).matrix
        tandem = tandem_transition(T, H).matrix
        checks = {
            "transition dominance": mat_leq(network, tandem),
            "support chain bound": support_chain_bound(G, H, n),
            "chain power bound": chain_power_bound(H, T, n),
            "weighted path bound": weighted_path_bound(G, H, T, n),
        }
        bad = [name for name, ok in checks.items() if not ok]
        if bad:
            failed += 1
            details.append(f"trial {trial}: failed {', '.join(bad)}")
        else:
            passed += 1
    return CheckReport("tandem-bound", passed, failed, tuple(details))
