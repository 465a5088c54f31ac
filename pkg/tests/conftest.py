"""Shared helpers: random DAG generation and brute-force graph facts."""

from __future__ import annotations

import random

from fjqn import DistributionSpec, NetworkSpec, NodeSpec, validate


def random_dag(rng: random.Random, max_nodes: int = 7, edge_prob: float = 0.4,
               timing: DistributionSpec | None = None) -> NetworkSpec:
    """A validated random DAG with shuffled ids and shuffled node listing."""
    if timing is None:
        timing = DistributionSpec.deterministic(1.0)
    n = rng.randint(1, max_nodes)
    order = list(range(1, n + 1))
    rng.shuffle(order)  # hidden topological order over arbitrary ids
    arcs = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.random() < edge_prob:
                arcs.append((order[i], order[j]))
    nodes = [NodeSpec(i, f"n{i}", timing) for i in range(1, n + 1)]
    rng.shuffle(nodes)
    return validate(NetworkSpec(tuple(nodes), tuple(arcs)))


def brute_longest_path(spec: NetworkSpec) -> int:
    """Longest path length by exhaustive DFS over all simple paths."""
    adj = {nd.id: [b for a, b in spec.arcs if a == nd.id] for nd in spec.nodes}
    best = 0

    def walk(node: int, length: int) -> None:
        nonlocal best
        best = max(best, length)
        for nxt in adj[node]:
            walk(nxt, length + 1)

    for nd in spec.nodes:
        walk(nd.id, 0)
    return best


def reachable_pairs(spec: NetworkSpec) -> set[tuple[int, int]]:
    """All (i, j) with a directed path of length >= 1 from i to j."""
    adj = {nd.id: [b for a, b in spec.arcs if a == nd.id] for nd in spec.nodes}
    pairs: set[tuple[int, int]] = set()
    for start in adj:
        frontier = list(adj[start])
        seen: set[int] = set()
        while frontier:
            cur = frontier.pop()
            if cur in seen:
                continue
            seen.add(cur)
            pairs.add((start, cur))
            frontier.extend(adj[cur])
    return pairs


def all_topological_orders(spec: NetworkSpec, cap: int = 200) -> list[list[int]]:
    """Every topological order of the node ids, up to `cap` of them."""
    preds = {nd.id: {a for a, b in spec.arcs if b == nd.id} for nd in spec.nodes}
    out: list[list[int]] = []

    def extend(prefix: list[int], done: set[int], remaining: set[int]) -> None:
        if len(out) >= cap:
            return
        if not remaining:
            out.append(list(prefix))
            return
        for node in sorted(remaining):
            if preds[node] <= done:
                prefix.append(node)
                extend(prefix, done | {node}, remaining - {node})
                prefix.pop()

    extend([], set(), {nd.id for nd in spec.nodes})
    return out
