"""Transition-matrix assembly and iteration of the completion-time recurrence.

The k-th completion vector obeys x(k) = A(k) (x) x(k-1) in (max,+), where
A(k) folds the cycle's service times T_k with the network's support matrix:
A(k) = sum_{j=0}^{p} (T_k (x) G^T)^j (x) T_k, truncated exactly at the
longest path length p because the support matrix is nilpotent. The tandem
variant uses the chain support matrix and truncates at j = n.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .maxplus import EPS, MaxPlusMatrix
from .network import (
    NetworkSpec,
    SupportMatrix,
    longest_path_length,
    support_matrix,
    tandem_support_matrix,
    validate,
)
from .timing import DistributionSpec, ScenarioSampler, derive_seed

_CHUNK = 4096  # cycles of transition matrices built per batch


@dataclass(frozen=True, slots=True)
class TransitionMatrix:
    """One cycle's assembled transition matrix, tagged by construction."""

    matrix: MaxPlusMatrix
    kind: str
    cycle: int | None = None

    def __post_init__(self):
        if self.kind not in ("network", "tandem"):
            raise ValueError(f"unknown transition kind {self.kind!r}")
        if self.matrix.rows != self.matrix.cols:
            raise ValueError("transition matrix must be square")


@dataclass(frozen=True, slots=True)
class SimulationResult:
    """Trajectory summary: final state, first state, and sampled norms."""

    final_state: np.ndarray
    first_state: np.ndarray
    norm_cycles: np.ndarray
    norms: np.ndarray
    cycles: int


@dataclass(frozen=True, slots=True)
class CycleTimeEstimate:
    """Monte Carlo cycle-time estimate averaged over replications."""

    gamma_hat: float
    cycles: int
    replications: int
    stderr: float
    per_replication: tuple[float, ...]


def _support_entries(support, expected_kind: str | None = None) -> MaxPlusMatrix:
    if isinstance(support, SupportMatrix):
        if expected_kind is not None and support.kind != expected_kind:
            raise ValueError(f"expected a {expected_kind} support matrix, got {support.kind}")
        return support.matrix
    if isinstance(support, MaxPlusMatrix):
        return support
    raise TypeError("support must be a SupportMatrix or MaxPlusMatrix")


def _check_service_matrix(T: MaxPlusMatrix) -> None:
    if T.rows != T.cols:
        raise ValueError("service-time matrix must be square")
    ent = T.entries
    off = ent[~np.eye(T.rows, dtype=bool)]
    if off.size and not (off == EPS).all():
        raise ValueError("service-time matrix must be diagonal (off-diagonal EPS)")
    diag = np.diag(ent)
    if not np.isfinite(diag).all() or (diag < 0).any():
        raise ValueError("service times must be finite and nonnegative")


def _horner(T: MaxPlusMatrix, support: MaxPlusMatrix, terms: int) -> MaxPlusMatrix:
    # sum_{j=0}^{terms} (T (x) S^T)^j (x) T, accumulated innermost-first
    step_mat = T.otimes(support.T)
    acc = MaxPlusMatrix.identity(T.rows)
    ident = MaxPlusMatrix.identity(T.rows)
    for _ in range(terms):
        acc = step_mat.otimes(acc).oplus(ident)
    return acc.otimes(T)


def network_transition(T: MaxPlusMatrix, support, path_bound: int,
                       cycle: int | None = None) -> TransitionMatrix:
    """Transition matrix for one cycle of a general acyclic network.

    `path_bound` must be at least the network's longest path length; the
    series is exact there because higher support-matrix powers vanish.
    """
    sup = _support_entries(support, None)
    _check_service_matrix(T)
    if sup.shape != T.shape:
        raise ValueError("support and service matrices must share a shape")
    if path_bound < 0:
        raise ValueError("path bound must be nonnegative")
    return TransitionMatrix(_horner(T, sup, path_bound), "network", cycle)


def tandem_transition(T: MaxPlusMatrix, support=None,
                      cycle: int | None = None) -> TransitionMatrix:
    """Transition matrix for the n-node tandem chain (truncation at j = n)."""
    _check_service_matrix(T)
    n = T.rows
    if support is None:
        support = tandem_support_matrix(n)
    sup = _support_entries(support, "tandem")
    if sup.shape != T.shape:
        raise ValueError("support and service matrices must share a shape")
    return TransitionMatrix(_horner(T, sup, n), "tandem", cycle)


def step(x, transition) -> np.ndarray:
    """One cycle of the recurrence: returns transition (x) x."""
    mat = transition.matrix if isinstance(transition, TransitionMatrix) else transition
    return mat.apply(x)


def _batched_transitions(tau: np.ndarray, support_t: np.ndarray, terms: int) -> np.ndarray:
    """Transition matrices for a block of cycles at once.

    tau is (C, n) service times, support_t the transposed support entries.
    Exploits diagonality of T_k: (T_k (x) S^T)[i, l] = tau_i + S^T[i, l] and
    (M (x) T_k)[i, j] = M[i, j] + tau_j, which keeps every float operation
    identical to the per-cycle path. Returns (C, n, n).
    """
    count, n = tau.shape
    step_mat = tau[:, :, None] + support_t[None, :, :]
    ident = np.full((n, n), EPS)
    np.fill_diagonal(ident, 0.0)
    acc = np.broadcast_to(ident, (count, n, n))
    for _ in range(terms):
        acc = np.maximum(_batched_product(step_mat, acc), ident[None, :, :])
    return acc + tau[:, None, :]


def _batched_product(left: np.ndarray, right: np.ndarray) -> np.ndarray:
    # (C,n,n) batch of max-plus matrix products
    return (left[:, :, :, None] + right[:, None, :, :]).max(axis=2)


def _resolve_tables(spec: NetworkSpec, x0) -> tuple[np.ndarray, np.ndarray, int]:
    validate(spec)
    n = spec.n
    sup_t = support_matrix(spec).matrix.T.entries
    bound = longest_path_length(spec)
    if x0 is None:
        x = np.zeros(n, dtype=np.float64)
    else:
        x = np.asarray(x0, dtype=np.float64).copy()
        if x.shape != (n,):
            raise ValueError(f"initial state must have length {n}")
        if not np.isfinite(x).all():
            raise ValueError("initial state entries must be finite")
    return x, sup_t, bound


def trajectory_from_table(spec: NetworkSpec, service_times, x0=None) -> np.ndarray:
    """All completion vectors x(1..K) for a precomputed (n, K) time table."""
    x, sup_t, bound = _resolve_tables(spec, x0)
    times = np.asarray(service_times, dtype=np.float64)
    if times.ndim != 2 or times.shape[0] != spec.n:
        raise ValueError(f"service-time table must be ({spec.n}, K)")
    if (times < 0).any() or not np.isfinite(times).all():
        raise ValueError("service times must be finite and nonnegative")
    cycles = times.shape[1]
    out = np.empty((cycles, spec.n), dtype=np.float64)
    for start in range(0, cycles, _CHUNK):
        block = times[:, start:start + _CHUNK].T.copy()
        mats = _batched_transitions(block, sup_t, bound)
        for c in range(block.shape[0]):
            x = (mats[c] + x[None, :]).max(axis=1)
            out[start + c] = x
    return out


def simulate(spec: NetworkSpec, sampler: ScenarioSampler, cycles: int,
             x0=None, norm_stride: int = 1) -> SimulationResult:
    """Iterate the recurrence for `cycles` freshly sampled cycles.

    Norms (max entry of x(k)) are recorded every `norm_stride` cycles and
    always at the final cycle. Same spec, sampler, and cycle count always
    reproduce the same trajectory.
    """
    if cycles < 1:
        raise ValueError("cycles must be >= 1")
    if norm_stride < 1:
        raise ValueError("norm stride must be >= 1")
    if sampler.n != spec.n:
        raise ValueError("sampler and network disagree on node count")
    x, sup_t, bound = _resolve_tables(spec, x0)
    first = None
    norm_cycles: list[int] = []
    norms: list[float] = []
    k = 0
    for start in range(1, cycles + 1, _CHUNK):
        count = min(_CHUNK, cycles - start + 1)
        block = sampler.sample_table(count, first_cycle=start).T.copy()
        mats = _batched_transitions(block, sup_t, bound)
        for c in range(count):
            x = (mats[c] + x[None, :]).max(axis=1)
            k += 1
            if k == 1:
                first = x.copy()
            if k % norm_stride == 0 or k == cycles:
                norm_cycles.append(k)
                norms.append(float(x.max()))
    return SimulationResult(
        final_state=x,
        first_state=first,
        norm_cycles=np.asarray(norm_cycles, dtype=np.int64),
        norms=np.asarray(norms, dtype=np.float64),
        cycles=cycles,
    )


def estimate_cycle_time(spec: NetworkSpec, sampler: ScenarioSampler, cycles: int,
                        replications: int = 10) -> CycleTimeEstimate:
    """Monte Carlo cycle-time estimate over independent replications.

    Each replication reseeds the sampler with a derived child seed, runs
    `cycles` steps from the all-zeros state, and measures the growth rate
    max_i (x_i(K) - x_i(1)) / (K - 1); differencing against x(1) removes
    the additive start-up offset, so deterministic timings recover the
    exact rate at any K >= 2. With K = 1 the estimate is max_i x_i(1).
    """
    if replications < 1:
        raise ValueError("replications must be >= 1")
    gammas: list[float] = []
    for rep in range(replications):
        rep_sampler = sampler.reseeded(derive_seed(sampler.seed, rep))
        res = simulate(spec, rep_sampler, cycles, norm_stride=cycles)
        if cycles == 1:
            gammas.append(float(res.final_state.max()))
        else:
            growth = res.final_state - res.first_state
            gammas.append(float(growth.max()) / (cycles - 1))
    arr = np.asarray(gammas, dtype=np.float64)
    if arr.max() == arr.min():
        gamma_hat = float(arr[0])  # exact mean of identical replications
    else:
        gamma_hat = float(arr.mean())
    stderr = float(arr.std(ddof=1) / np.sqrt(replications)) if replications > 1 else 0.0
    return CycleTimeEstimate(gamma_hat, cycles, replications, stderr, tuple(gammas))


def analytic_cycle_time(spec: NetworkSpec, sampler: ScenarioSampler | None = None) -> float:
    """Closed-form cycle time: the maximum mean service time over nodes."""
    if sampler is not None:
        if sampler.n != spec.n:
            raise ValueError("sampler and network disagree on node count")
        return max(sampler.means())
    validate(spec)
    return max(nd.timing.mean() for nd in spec.nodes)


def make_sampler(spec: NetworkSpec, seed: int = 0, coupling: str = "independent",
                 shock_weight: float = 0.0) -> ScenarioSampler:
    """Sampler over the network's own per-node service laws, ordered by id."""
    validate(spec)
    dists = tuple(nd.timing for nd in sorted(spec.nodes, key=lambda nd: nd.id))
    return ScenarioSampler(dists, seed=seed, coupling=coupling, shock_weight=shock_weight)
