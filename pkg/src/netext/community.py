"""Modularity scoring and community detection on a WordGraph.

Edge weights play the role of A_ij and weighted degree the role of k_i,
with ``2m`` the sum of all adjacency entries.
"""
from __future__ import annotations

from dataclasses import dataclass
from decimal import ROUND_HALF_UP, Decimal
from typing import Mapping, Sequence

import numpy as np

from . import _kernels
from .wordgraph import GraphError, WordGraph

EXACT_MAX_NODES = 12


class PartitionError(ValueError):
    pass


@dataclass(frozen=True)
class Partition:
    """Community id per node, in the graph's node order.  Ids are dense
    ``0..c-1``, numbered by first appearance."""

    assignment: tuple[int, ...]

    def __post_init__(self):
        a = tuple(int(x) for x in self.assignment)
        object.__setattr__(self, "assignment", a)
        if a and sorted(set(a)) != list(range(max(a) + 1)):
            raise PartitionError("community ids must be dense 0..c-1")

    @classmethod
    def from_labels(cls, labels: Sequence) -> "Partition":
        """Canonical dense partition from arbitrary hashable labels."""
        remap: dict = {}
        return cls(tuple(remap.setdefault(x, len(remap)) for x in labels))

    @classmethod
    def from_mapping(cls, graph: WordGraph, mapping: Mapping[str, object]) -> "Partition":
        missing = [t for t in graph.nodes if t not in mapping]
        if missing:
            raise PartitionError(f"nodes without a community: {missing[:5]}")
        extra = set(mapping) - set(graph.nodes)
        if extra:
            raise PartitionError(f"unknown nodes in partition: {sorted(extra)[:5]}")
        return cls.from_labels([mapping[t] for t in graph.nodes])

    @property
    def n_communities(self) -> int:
        return max(self.assignment) + 1 if self.assignment else 0

    def same(self, i: int, j: int) -> int:
        """Kronecker delta of the communities of nodes i and j."""
        return int(self.assignment[i] == self.assignment[j])

    def members(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in range(self.n_communities)]
        for node, c in enumerate(self.assignment):
            out[c].append(node)
        return out

    def as_mapping(self, graph: WordGraph) -> dict[str, int]:
        return dict(zip(graph.nodes, self.assignment))


def _check(graph: WordGraph, partition: Partition) -> None:
    if len(partition.assignment) != graph.n_nodes:
        raise PartitionError(
            f"partition covers {len(partition.assignment)} nodes, graph has {graph.n_nodes}"
        )


def modularity(graph: WordGraph, partition: Partition, resolution: float = 1.0) -> float:
    """Weighted Newman modularity of ``partition``.

    Evaluated per community as ``sum_c [in_c / 2m - resolution * (tot_c / 2m)^2]``,
    which equals the ordered-pair double sum with the Kronecker delta.
    """
    _check(graph, partition)
    if graph.n_nodes == 0 or graph.m <= 0:
        raise GraphError("modularity is undefined for a graph without edges")
    m2 = 2.0 * graph.m
    c = partition.assignment
    n_comm = partition.n_communities
    inside = [0.0] * n_comm
    tot = [0.0] * n_comm
    for i, j, w in graph.edges:
        tot[c[i]] += w
        tot[c[j]] += w
        if c[i] == c[j]:
            inside[c[i]] += 2.0 * w
    return sum(inside) / m2 - resolution * sum(t * t for t in tot) / (m2 * m2)


def singletons(graph: WordGraph) -> Partition:
    return Partition(tuple(range(graph.n_nodes)))


def one_community(graph: WordGraph) -> Partition:
    return Partition((0,) * graph.n_nodes)


def _dense(labels: np.ndarray) -> tuple[np.ndarray, int]:
    """Renumber labels by first appearance in index order."""
    _, first, inverse = np.unique(labels, return_index=True, return_inverse=True)
    rank = np.empty(len(first), dtype=np.int64)
    rank[np.argsort(first, kind="stable")] = np.arange(len(first))
    return rank[inverse.ravel()], len(first)


def _aggregate(indptr, indices, weights, comm, n_comm):
    rows = np.repeat(np.arange(len(indptr) - 1, dtype=np.int64), np.diff(indptr))
    keys = comm[rows] * n_comm + comm[indices]
    uniq, inverse = np.unique(keys, return_inverse=True)
    new_w = np.bincount(inverse.ravel(), weights=weights, minlength=len(uniq))
    new_rows = uniq // n_comm
    new_indptr = np.zeros(n_comm + 1, dtype=np.int64)
    np.cumsum(np.bincount(new_rows, minlength=n_comm), out=new_indptr[1:])
    return new_indptr, (uniq % n_comm).astype(np.int64), new_w.astype(np.float64)


def louvain_levels(graph: WordGraph, resolution: float = 1.0, seed: int = 0,
                   kernel=None) -> list[Partition]:
    """Partition of the original nodes after each aggregation level."""
    if resolution <= 0:
        raise ValueError("resolution must be positive")
    if graph.n_nodes == 0 or graph.m <= 0:
        raise GraphError("louvain needs a graph with positive total weight")
    kernel = kernel or _kernels.local_moves
    rng = np.random.default_rng(seed)
    indptr, indices, weights = graph.to_csr()
    strength = np.bincount(np.repeat(np.arange(graph.n_nodes), np.diff(indptr)),
                           weights=weights, minlength=graph.n_nodes).astype(np.float64)
    m2 = float(weights.sum())
    node_comm = np.arange(graph.n_nodes, dtype=np.int64)
    levels = []
    while True:
        n = len(strength)
        comm = np.arange(n, dtype=np.int64)
        order = rng.permutation(n).astype(np.int64)
        moved = kernel(indptr, indices, weights, strength, comm, order, float(resolution), m2)
        comm, n_comm = _dense(comm)
        node_comm = comm[node_comm]
        if moved == 0 and levels:
            break
        levels.append(Partition(tuple(_dense(node_comm)[0].tolist())))
        if moved == 0 or n_comm == n:
            break
        strength = np.bincount(comm, weights=strength, minlength=n_comm)
        indptr, indices, weights = _aggregate(indptr, indices, weights, comm, n_comm)
    return levels


def louvain(graph: WordGraph, resolution: float = 1.0, seed: int = 0, kernel=None) -> Partition:
    """Two-phase greedy modularity maximisation (local moves + aggregation).

    Node visit order at every level is a permutation drawn from
    ``numpy.random.default_rng(seed)``.  If the greedy result scores below 0
    the single-community partition (score 0) is returned instead.
    """
    result = louvain_levels(graph, resolution, seed, kernel)[-1]
    if modularity(graph, result) < 0:
        return one_community(graph)
    return result


def set_partitions(n: int):
    """Yield every set partition of n items as a restricted growth string,
    in lexicographic order."""
    a = [0] * n
    if n == 0:
        yield ()
        return

    def rec(i: int, top: int):
        if i == n:
            yield tuple(a)
            return
        for v in range(top + 2):
            a[i] = v
            yield from rec(i + 1, max(top, v))

    a[0] = 0
    yield from rec(1, 0)


def exact_partition(graph: WordGraph) -> tuple[Partition, float]:
    """Brute-force modularity optimum over all set partitions.

    Ties (within 1e-12) go to fewer communities, then to the
    lexicographically smaller assignment.
    """
    n = graph.n_nodes
    if n > EXACT_MAX_NODES:
        raise GraphError(f"exact enumeration limited to {EXACT_MAX_NODES} nodes, got {n}")
    if n == 0 or graph.m <= 0:
        raise GraphError("modularity is undefined for a graph without edges")
    m2 = 2.0 * graph.m
    k = graph.strength().tolist()
    adj = graph.adj
    best = None
    best_q = -np.inf
    best_c = 0
    # incremental scoring: assign nodes in order, tracking per-community
    # inside weight and strength
    inside = [0.0] * n
    tot = [0.0] * n
    a = [0] * n

    def rec(i: int, top: int):
        nonlocal best, best_q, best_c
        if i == n:
            q = sum(inside[:top + 1]) / m2 - sum(t * t for t in tot[:top + 1]) / (m2 * m2)
            ncomm = top + 1
            if q > best_q + 1e-12 or (abs(q - best_q) <= 1e-12 and ncomm < best_c):
                best, best_q, best_c = tuple(a), q, ncomm
            return
        links = adj[i]
        for v in range(top + 2):
            a[i] = v
            add = 0.0
            for j, w in links.items():
                if j < i and a[j] == v:
                    add += 2.0 * w
            inside[v] += add
            tot[v] += k[i]
            rec(i + 1, max(top, v))
            inside[v] -= add
            tot[v] -= k[i]

    a[0] = 0
    tot[0] = k[0]
    rec(1, 0)
    partition = Partition(best)
    return partition, modularity(graph, partition)


@dataclass(frozen=True)
class CommunityEntry:
    id: int
    nodes: tuple[str, ...]
    size_percent: Decimal

    @property
    def size(self) -> int:
        return len(self.nodes)


@dataclass(frozen=True)
class CommunitySummary:
    communities: tuple[CommunityEntry, ...]
    modularity: float
    n_nodes: int

    @property
    def count(self) -> int:
        return len(self.communities)


def percent(size: int, total: int) -> Decimal:
    """100 * size / total, rounded half-up to 2 decimals."""
    if total == 0:
        return Decimal("0.00")
    return (Decimal(100 * size) / Decimal(total)).quantize(Decimal("0.01"), rounding=ROUND_HALF_UP)


def summarize_groups(groups: Sequence[Sequence[str]], n_nodes: int, modularity_value: float) -> CommunitySummary:
    """Summary from explicit node groups, keeping each group's position as its id."""
    entries = [CommunityEntry(cid, tuple(nodes), percent(len(nodes), n_nodes))
               for cid, nodes in enumerate(groups)]
    entries.sort(key=lambda e: (-e.size, e.id))
    return CommunitySummary(tuple(entries), float(modularity_value), n_nodes)


def summarize(graph: WordGraph, partition: Partition) -> CommunitySummary:
    _check(graph, partition)
    groups = [[graph.nodes[i] for i in members] for members in partition.members()]
    q = modularity(graph, partition) if graph.m > 0 else 0.0
    return summarize_groups(groups, graph.n_nodes, q)


def move_gain(graph: WordGraph, partition: Partition, node: int, target: int,
              resolution: float = 1.0) -> float:
    """Change in modularity from moving ``node`` into community ``target``.

    This is the local-move delta the Louvain kernels rank candidates by,
    ``[(k_i,target - k_i,own) - resolution * k_i * (tot_target - tot_own + k_i) / 2m] / m``,
    where ``tot_own`` still includes the node itself.
    """
    _check(graph, partition)
    c = partition.assignment
    own = c[node]
    if target == own:
        return 0.0
    m = graph.m
    k = graph.strength()
    link_target = sum(w for j, w in graph.adj[node].items() if c[j] == target)
    link_own = sum(w for j, w in graph.adj[node].items() if c[j] == own)
    tot_target = sum(k[j] for j in range(graph.n_nodes) if c[j] == target)
    tot_own = sum(k[j] for j in range(graph.n_nodes) if c[j] == own)
    ki = k[node]
    return ((link_target - link_own) - resolution * ki * (tot_target - tot_own + ki) / (2 * m)) / m
