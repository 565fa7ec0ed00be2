"""Weighted undirected word network built from mined pairs."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

import numpy as np

from .association import WordPair


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class NodeMetrics:
    degree: int
    weighted_degree: float


@dataclass(frozen=True, eq=False)
class WordGraph:
    """Nodes are terms in lexicographic order; ``edges`` holds ``(i, j, w)``
    with ``i < j`` sorted by ``(i, j)``.  ``m`` is the total edge weight,
    i.e. half of the adjacency sum.
    """

    nodes: tuple[str, ...] = ()
    edges: tuple[tuple[int, int, float], ...] = ()
    doc_freq: Mapping[str, int] = field(default_factory=dict)

    def __post_init__(self):
        index = {t: i for i, t in enumerate(self.nodes)}
        if len(index) != len(self.nodes):
            raise GraphError("duplicate node labels")
        adj: list[dict[int, float]] = [{} for _ in self.nodes]
        for i, j, w in self.edges:
            if i == j:
                raise GraphError(f"self-loop on {self.nodes[i]!r}")
            if j in adj[i]:
                raise GraphError(f"duplicate edge {self.nodes[i]!r}-{self.nodes[j]!r}")
            if not w > 0:
                raise GraphError("edge weights must be positive")
            adj[i][j] = w
            adj[j][i] = w
        object.__setattr__(self, "index", index)
        object.__setattr__(self, "adj", adj)

    @property
    def n_nodes(self) -> int:
        return len(self.nodes)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def m(self) -> float:
        return sum(w for _, _, w in self.edges)

    def weight(self, a: str, b: str) -> float:
        """A_ab, 0 when there is no edge (including a == b)."""
        return self.adj[self.index[a]].get(self.index[b], 0)

    def strength(self) -> np.ndarray:
        k = np.zeros(len(self.nodes))
        for i, j, w in self.edges:
            k[i] += w
            k[j] += w
        return k

    def to_csr(self):
        """Symmetric CSR arrays (indptr, indices, weights) with sorted rows."""
        n = len(self.nodes)
        indptr = np.zeros(n + 1, dtype=np.int64)
        for i, row in enumerate(self.adj):
            indptr[i + 1] = indptr[i] + len(row)
        indices = np.empty(indptr[-1], dtype=np.int64)
        weights = np.empty(indptr[-1], dtype=np.float64)
        for i, row in enumerate(self.adj):
            cols = sorted(row)
            lo = indptr[i]
            indices[lo:lo + len(cols)] = cols
            weights[lo:lo + len(cols)] = [row[c] for c in cols]
        return indptr, indices, weights

    def labeled_edges(self):
        for i, j, w in self.edges:
            yield self.nodes[i], self.nodes[j], w

    def __eq__(self, other):
        if not isinstance(other, WordGraph):
            return NotImplemented
        return self.nodes == other.nodes and self.edges == other.edges


def from_edges(edges: Iterable[tuple[str, str, float]], doc_freq: Mapping[str, int] | None = None) -> WordGraph:
    """Build a graph from labeled ``(a, b, weight)`` triples."""
    edges = [(a, b, w) if a < b else (b, a, w) for a, b, w in edges]
    labels = sorted({t for a, b, _ in edges for t in (a, b)})
    index = {t: i for i, t in enumerate(labels)}
    seen = set()
    triples = []
    for a, b, w in edges:
        if a == b:
            raise GraphError(f"self-loop on {a!r}")
        if (a, b) in seen:
            raise GraphError(f"duplicate pair {a!r}-{b!r}; aggregate weights first")
        seen.add((a, b))
        triples.append((index[a], index[b], w))
    triples.sort()
    df = {t: doc_freq[t] for t in labels if t in doc_freq} if doc_freq else {}
    return WordGraph(tuple(labels), tuple(triples), df)


def build_graph(pairs: Iterable[WordPair], prune_isolated: bool = True,
                doc_freq: Mapping[str, int] | None = None) -> WordGraph:
    # nodes come from pairs, so nothing is ever isolated and pruning is a no-op
    return from_edges(((p.a, p.b, p.weight) for p in pairs), doc_freq)


def node_metrics(graph: WordGraph) -> dict[str, NodeMetrics]:
    return {
        term: NodeMetrics(len(graph.adj[i]), sum(graph.adj[i].values()))
        for i, term in enumerate(graph.nodes)
    }


def density(graph: WordGraph) -> float:
    return density_from_counts(graph.n_nodes, graph.n_edges)


def density_from_counts(n_nodes: int, n_edges: int) -> float:
    if n_nodes < 2:
        raise GraphError("density needs at least two nodes")
    return 2 * n_edges / (n_nodes * (n_nodes - 1))
