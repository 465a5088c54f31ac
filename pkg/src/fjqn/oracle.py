"""Brute-force fork-join completion times, independent of the matrix engine.

Computes the k-th completion epoch at each node directly from the start
rule (a service starts when the node's previous service and all upstream
services of the same cycle have completed), using plain Python arithmetic.
No max-plus code is imported, so a shared algebra bug cannot hide here.
"""

from __future__ import annotations

import numpy as np

from .network import NetworkError, NetworkSpec, validate


def _default_order(spec: NetworkSpec) -> list[int]:
    """Smallest-id-first topological order of the node ids."""
    preds: dict[int, set[int]] = {nd.id: set() for nd in spec.nodes}
    for a, b in spec.arcs:
        preds[b].add(a)
    order: list[int] = []
    done: set[int] = set()
    remaining = {nd.id for nd in spec.nodes}
    while remaining:
        ready = sorted(i for i in remaining if preds[i] <= done)
        if not ready:
            raise NetworkError("no topological order exists")
        order.append(ready[0])
        done.add(ready[0])
        remaining.remove(ready[0])
    return order


def unfolded_completion_times(spec: NetworkSpec, service_times, x0=None,
                              order: list[int] | None = None) -> np.ndarray:
    """Completion epochs for every node and cycle by direct recursion.

    `service_times` is an (n, K) table, row i-1 holding node i's times for
    cycles 1..K. Returns a (K, n) array whose row k-1 is the vector of k-th
    completion epochs. `order` optionally fixes the within-cycle evaluation
    order (any topological order gives identical results).
    """
    validate(spec)
    times = np.asarray(service_times, dtype=np.float64)
    if times.ndim != 2 or times.shape[0] != spec.n:
        raise ValueError(f"service-time table must be ({spec.n}, K)")
    if (times < 0).any():
        raise ValueError("service times must be nonnegative")
    n, cycles = times.shape
    if x0 is None:
        x0 = [0.0] * n
    prev = [float(v) for v in x0]
    if len(prev) != n:
        raise ValueError("initial state has wrong length")
    preds = {nd.id: spec.predecessors(nd.id) for nd in spec.nodes}
    if order is None:
        order = _default_order(spec)
    else:
        if sorted(order) != sorted(nd.id for nd in spec.nodes):
            raise ValueError("order must be a permutation of the node ids")
        pos = {node: idx for idx, node in enumerate(order)}
        for node in order:
            if any(pos[j] > pos[node] for j in preds[node]):
                raise ValueError("order is not topological")
    out = np.empty((cycles, n), dtype=np.float64)
    for k in range(cycles):
        cur = [0.0] * n
        for node in order:
            start = prev[node - 1]
            for j in preds[node]:
                if cur[j - 1] > start:
                    start = cur[j - 1]
            cur[node - 1] = start + float(times[node - 1, k])
        out[k] = cur
        prev = cur
    return out
