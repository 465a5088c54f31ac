"""Acyclic fork-join network topologies and their support matrices.

A network is a DAG of service nodes. Node ids are 1-based and must form the
contiguous range 1..n; arcs are (from-id, to-id) pairs. After topological
renumbering every arc satisfies from < to, which makes the general support
matrix strictly upper triangular and hence nilpotent.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, replace

import numpy as np

from .maxplus import EPS, MaxPlusMatrix
from .timing import DistributionSpec


class NetworkError(ValueError):
    """Raised for malformed topologies (cycles, bad arcs, bad ids)."""


@dataclass(frozen=True, slots=True)
class NodeSpec:
    """One service node: 1-based id, display label, service-time law."""

    id: int
    label: str
    timing: DistributionSpec


@dataclass(frozen=True, slots=True)
class NetworkSpec:
    """An ordered node list plus directed arcs between node ids."""

    nodes: tuple[NodeSpec, ...]
    arcs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "arcs", tuple((int(a), int(b)) for a, b in self.arcs))

    @property
    def n(self) -> int:
        return len(self.nodes)

    def node(self, node_id: int) -> NodeSpec:
        for nd in self.nodes:
            if nd.id == node_id:
                return nd
        raise NetworkError(f"no node with id {node_id}")

    def successors(self, node_id: int) -> tuple[int, ...]:
        return tuple(b for a, b in self.arcs if a == node_id)

    def predecessors(self, node_id: int) -> tuple[int, ...]:
        return tuple(a for a, b in self.arcs if b == node_id)


@dataclass(frozen=True, slots=True)
class SupportMatrix:
    """A 0/EPS adjacency matrix tagged as general-DAG or tandem-chain."""

    matrix: MaxPlusMatrix
    kind: str

    def __post_init__(self):
        if self.kind not in ("general", "tandem"):
            raise ValueError(f"unknown support-matrix kind {self.kind!r}")
        entries = self.matrix.entries
        ok = (entries == 0.0) | (entries == EPS)
        if not ok.all():
            raise ValueError("support matrix entries must be 0 or EPS")


def _adjacency(spec: NetworkSpec) -> dict[int, list[int]]:
    adj: dict[int, list[int]] = {nd.id: [] for nd in spec.nodes}
    for a, b in spec.arcs:
        adj[a].append(b)
    return adj


def _find_cycle(spec: NetworkSpec) -> list[int] | None:
    """Return one directed cycle as a node-id list, or None if acyclic."""
    adj = _adjacency(spec)
    color = {nd.id: 0 for nd in spec.nodes}  # 0 new, 1 on stack, 2 done
    parent: dict[int, int] = {}
    for root in sorted(color):
        if color[root] != 0:
            continue
        stack = [(root, iter(adj[root]))]
        color[root] = 1
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color[nxt] == 0:
                    color[nxt] = 1
                    parent[nxt] = node
                    stack.append((nxt, iter(adj[nxt])))
                    advanced = True
                    break
                if color[nxt] == 1:
                    cycle = [nxt]
                    cur = node
                    while cur != nxt:
                        cycle.append(cur)
                        cur = parent[cur]
                    cycle.append(nxt)
                    cycle.reverse()
                    return cycle
            if not advanced:
                color[node] = 2
                stack.pop()
    return None


def validate(spec: NetworkSpec) -> NetworkSpec:
    """Check ids, arcs, and acyclicity; return the network unchanged if sound."""
    if spec.n == 0:
        raise NetworkError("network must contain at least one node")
    ids = [nd.id for nd in spec.nodes]
    if len(set(ids)) != len(ids):
        dup = sorted(i for i in set(ids) if ids.count(i) > 1)
        raise NetworkError(f"duplicate node ids: {dup}")
    if set(ids) != set(range(1, spec.n + 1)):
        raise NetworkError(f"node ids must be exactly 1..{spec.n}, got {sorted(ids)}")
    known = set(ids)
    seen: set[tuple[int, int]] = set()
    for a, b in spec.arcs:
        if a == b:
            raise NetworkError(f"self-loop at node {a}")
        if a not in known or b not in known:
            raise NetworkError(f"arc ({a}, {b}) references an unknown node")
        if (a, b) in seen:
            raise NetworkError(f"duplicate arc ({a}, {b})")
        seen.add((a, b))
    cycle = _find_cycle(spec)
    if cycle is not None:
        path = " -> ".join(str(v) for v in cycle)
        raise NetworkError(f"network graph contains a cycle: {path}")
    return spec


def topological_renumber(spec: NetworkSpec) -> tuple[NetworkSpec, dict[int, int]]:
    """Relabel nodes so every arc (i, j) has i < j.

    Kahn's algorithm with a min-heap, so ties go to the smallest original id
    and the result is deterministic. Returns the renumbered network and the
    old-id -> new-id mapping. Already-sorted networks map to the identity.
    """
    validate(spec)
    indeg = {nd.id: 0 for nd in spec.nodes}
    adj = _adjacency(spec)
    for _, b in spec.arcs:
        indeg[b] += 1
    ready = [i for i, d in indeg.items() if d == 0]
    heapq.heapify(ready)
    mapping: dict[int, int] = {}
    while ready:
        node = heapq.heappop(ready)
        mapping[node] = len(mapping) + 1
        for nxt in adj[node]:
            indeg[nxt] -= 1
            if indeg[nxt] == 0:
                heapq.heappush(ready, nxt)
    by_old = {nd.id: nd for nd in spec.nodes}
    nodes = tuple(
        replace(by_old[old], id=new)
        for old, new in sorted(mapping.items(), key=lambda kv: kv[1])
    )
    arcs = tuple(sorted((mapping[a], mapping[b]) for a, b in spec.arcs))
    return NetworkSpec(nodes, arcs), mapping


def support_matrix(spec: NetworkSpec) -> SupportMatrix:
    """General support matrix: entry (i, j) is 0 iff arc (i, j) exists."""
    validate(spec)
    n = spec.n
    data = np.full((n, n), EPS)
    for a, b in spec.arcs:
        data[a - 1, b - 1] = 0.0
    return SupportMatrix(MaxPlusMatrix(data), "general")


def tandem_support_matrix(n: int) -> SupportMatrix:
    """Tandem support matrix: 0 exactly on the first superdiagonal."""
    if n < 1:
        raise NetworkError("tandem support matrix needs n >= 1")
    data = np.full((n, n), EPS)
    for i in range(n - 1):
        data[i, i + 1] = 0.0
    return SupportMatrix(MaxPlusMatrix(data), "tandem")


def longest_path_length(spec: NetworkSpec) -> int:
    """Maximum number of arcs on any directed path (0 for arcless graphs)."""
    renum, mapping = topological_renumber(spec)
    dist = [0] * (renum.n + 1)
    for a, b in renum.arcs:  # sorted, so a < b is processed in order
        dist[b] = max(dist[b], dist[a] + 1)
    return max(dist)


def tandem_network(timings: list[DistributionSpec] | tuple[DistributionSpec, ...],
                   labels: list[str] | None = None) -> NetworkSpec:
    """Chain 1 -> 2 -> ... -> n with the given per-node service laws."""
    n = len(timings)
    if n == 0:
        raise NetworkError("tandem network needs at least one node")
    if labels is None:
        labels = [f"stage {i}" for i in range(1, n + 1)]
    if len(labels) != n:
        raise NetworkError("labels and timings must have equal length")
    nodes = tuple(NodeSpec(i + 1, labels[i], timings[i]) for i in range(n))
    arcs = tuple((i, i + 1) for i in range(1, n))
    return validate(NetworkSpec(nodes, arcs))
