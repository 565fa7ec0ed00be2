import itertools
from pathlib import Path

import numpy as np
import pytest

from netext.wordgraph import from_edges

ROOT = Path(__file__).resolve().parents[1]
FIXTURES = ROOT / "fixtures"


def triangle_edges(names, w=1):
    a, b, c = names
    return [(a, b, w), (b, c, w), (a, c, w)]


def two_triangles():
    return from_edges(triangle_edges("abc") + triangle_edges("def"))


def complete_graph(n, w=1):
    names = [f"v{i}" for i in range(n)]
    return from_edges([(a, b, w) for a, b in itertools.combinations(names, 2)])


def barbell():
    left = [f"l{i}" for i in range(4)]
    right = [f"r{i}" for i in range(4)]
    edges = [(a, b, 1) for a, b in itertools.combinations(left, 2)]
    edges += [(a, b, 1) for a, b in itertools.combinations(right, 2)]
    edges.append(("l3", "r0", 1))
    return from_edges(edges)


def ring_of_triangles(k=4):
    edges = []
    for t in range(k):
        a, b, c = (f"n{3 * t + i:02d}" for i in range(3))
        edges += triangle_edges((a, b, c))
        edges.append((c, f"n{(3 * (t + 1)) % (3 * k):02d}", 1))
    return from_edges(edges)


def random_weighted_graph(rng, n_min=4, n_max=20, p=0.4, integer=False):
    """Connected-or-not random graph with at least one edge."""
    while True:
        n = int(rng.integers(n_min, n_max + 1))
        names = [f"t{i:02d}" for i in range(n)]
        edges = []
        for a, b in itertools.combinations(names, 2):
            if rng.random() < p:
                w = int(rng.integers(1, 10)) if integer else float(rng.uniform(0.1, 10.0))
                edges.append((a, b, w))
        if edges:
            g = from_edges(edges)
            if g.n_nodes >= n_min:
                return g


def dense_modularity(graph, labels):
    """Textbook double sum over ordered node pairs, straight from the
    definition: (1/2m) sum_ij (A_ij - k_i k_j / 2m) delta(c_i, c_j)."""
    n = graph.n_nodes
    A = np.zeros((n, n))
    for i, j, w in graph.edges:
        A[i, j] = w
        A[j, i] = w
    k = A.sum(axis=1)
    m2 = A.sum()
    total = 0.0
    for i in range(n):
        for j in range(n):
            if labels[i] == labels[j]:
                total += A[i, j] - k[i] * k[j] / m2
    return total / m2


@pytest.fixture
def rng():
    return np.random.default_rng(20170101)


# Lazada column of the published data profile and top-10 pair table
LAZADA_PROFILE = (25436, 9100, 200, 619)
LAZADA_PAIRS = (
    ("pesanan", "sampai", 116), ("pesanan", "tidak sampai", 80), ("pesanan", "tidak kirim", 75),
    ("barang", "sampai", 62), ("tidak sesuai", "estimasi", 55), ("barang", "tidak sampai", 42),
    ("pesanan", "batal", 41), ("batal", "sepihak", 36), ("pengiriman", "lama", 32),
    ("murah", "harga", 30),
)
# group sizes consistent with the published 27.84% / 15.98% shares; those
# shares imply 194 partitioned words, not 200
LAZADA_GROUP_SIZES = (54, 31, 20, 18, 16, 14, 12, 10, 8, 6, 5)


def lazada_mock_report():
    from netext.association import WordPair
    from netext.community import summarize_groups
    from netext.report import AnalysisReport, DataProfile

    words = iter(f"kata{i:03d}" for i in range(sum(LAZADA_GROUP_SIZES)))
    groups = [[next(words) for _ in range(k)] for k in LAZADA_GROUP_SIZES]
    summary = summarize_groups(groups, sum(LAZADA_GROUP_SIZES), 0.411)
    return AnalysisReport(
        name="Lazada",
        profile=DataProfile(*LAZADA_PROFILE),
        top_pairs=tuple(WordPair(a, b, w) for a, b, w in LAZADA_PAIRS),
        density=2 * 619 / (200 * 199),
        modularity=0.411,
        communities=summary,
    )


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
