import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from netext import _kernels
from netext.community import (
    EXACT_MAX_NODES, Partition, PartitionError, exact_partition, louvain, louvain_levels,
    modularity, move_gain, one_community, set_partitions, singletons, summarize, summarize_groups,
)
from netext.wordgraph import GraphError, build_graph, from_edges

from conftest import (
    FIXTURES, barbell, complete_graph, dense_modularity, random_weighted_graph, ring_of_triangles,
    triangle_edges, two_triangles,
)


def random_partition(rng, n):
    return Partition.from_labels(rng.integers(0, max(1, int(rng.integers(1, n + 1))), size=n).tolist())


# --- modularity ------------------------------------------------------------

def test_single_community_scores_zero(rng):
    for _ in range(20):
        g = random_weighted_graph(rng)
        assert abs(modularity(g, one_community(g))) <= 1e-12


def test_two_triangles_half():
    g = two_triangles()
    assert modularity(g, Partition((0, 0, 0, 1, 1, 1))) == pytest.approx(0.5, abs=1e-12)


def test_triangle_singletons():
    g = from_edges(triangle_edges("abc"))
    assert modularity(g, singletons(g)) == pytest.approx(-1 / 3, abs=1e-12)


def test_matches_dense_double_sum(rng):
    for _ in range(50):
        g = random_weighted_graph(rng, n_max=12)
        p = random_partition(rng, g.n_nodes)
        assert modularity(g, p) == pytest.approx(dense_modularity(g, p.assignment), abs=1e-12)


def test_coverage_error():
    g = two_triangles()
    with pytest.raises(PartitionError):
        modularity(g, Partition((0, 0, 0)))
    with pytest.raises(PartitionError):
        Partition.from_mapping(g, {"a": 0})


def test_empty_graph_error():
    with pytest.raises(GraphError):
        modularity(build_graph([]), Partition(()))


def test_partition_ids_must_be_dense():
    with pytest.raises(PartitionError):
        Partition((0, 2))
    p = Partition.from_labels(["x", "y", "x"])
    assert p.assignment == (0, 1, 0)
    assert p.same(0, 2) == 1 and p.same(0, 1) == 0


def test_relabel_and_scale_invariance(rng):
    for _ in range(30):
        g = random_weighted_graph(rng)
        p = random_partition(rng, g.n_nodes)
        base = modularity(g, p)
        perm = rng.permutation(p.n_communities)
        relabeled = Partition.from_labels([int(perm[c]) + 100 for c in p.assignment])
        assert modularity(g, relabeled) == pytest.approx(base, abs=1e-12)
        factor = float(rng.uniform(0.001, 1000))
        scaled = from_edges([(a, b, w * factor) for a, b, w in g.labeled_edges()])
        assert modularity(scaled, p) == pytest.approx(base, abs=1e-9)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 100_000))
def test_bounds(seed):
    r = np.random.default_rng(seed)
    g = random_weighted_graph(r, n_max=10)
    q = modularity(g, random_partition(r, g.n_nodes))
    assert -1 <= q < 1
    assert modularity(g, singletons(g)) <= 1e-15


def test_move_gain_matches_recomputation(rng):
    for _ in range(100):
        g = random_weighted_graph(rng, n_max=12)
        p = random_partition(rng, g.n_nodes)
        node = int(rng.integers(g.n_nodes))
        target = int(rng.integers(p.n_communities + 1))  # may open a new community
        moved = list(p.assignment)
        moved[node] = target
        expected = modularity(g, Partition.from_labels(moved)) - modularity(g, p)
        assert move_gain(g, p, node, target) == pytest.approx(expected, abs=1e-12)


# --- exact enumeration -----------------------------------------------------

def test_bell_numbers():
    assert [sum(1 for _ in set_partitions(n)) for n in range(8)] == [1, 1, 2, 5, 15, 52, 203, 877]


def test_exact_single_edge():
    g = from_edges([("a", "b", 1)])
    p, q = exact_partition(g)
    assert p.assignment == (0, 0)
    assert q == pytest.approx(0, abs=1e-12)


def test_exact_two_triangles():
    p, q = exact_partition(two_triangles())
    assert p.assignment == (0, 0, 0, 1, 1, 1)
    assert q == pytest.approx(0.5, abs=1e-12)


def test_exact_k4_single_community():
    p, q = exact_partition(complete_graph(4))
    assert p.n_communities == 1 and q == pytest.approx(0, abs=1e-12)


def test_exact_preconditions():
    with pytest.raises(GraphError):
        exact_partition(build_graph([]))
    with pytest.raises(GraphError, match="limited"):
        exact_partition(complete_graph(EXACT_MAX_NODES + 1))


def test_exact_agrees_with_naive_enumeration(rng):
    for _ in range(10):
        g = random_weighted_graph(rng, n_max=7)
        best = max(dense_modularity(g, a) for a in set_partitions(g.n_nodes))
        assert exact_partition(g)[1] == pytest.approx(best, abs=1e-12)


def test_exact_beats_random_partitions(rng):
    for _ in range(10):
        g = random_weighted_graph(rng, n_max=8)
        q = exact_partition(g)[1]
        for _ in range(200):
            assert q >= modularity(g, random_partition(rng, g.n_nodes)) - 1e-12


# --- louvain -----------------------------------------------------------------

def test_louvain_two_triangles():
    g = two_triangles()
    p = louvain(g)
    assert p.assignment == (0, 0, 0, 1, 1, 1)
    assert modularity(g, p) == pytest.approx(0.5, abs=1e-12)


def test_louvain_k4_single_community():
    g = complete_graph(4)
    p = louvain(g)
    assert p.n_communities == 1
    assert modularity(g, p) == pytest.approx(0, abs=1e-12)


@pytest.mark.parametrize("make", [two_triangles, barbell, ring_of_triangles])
def test_louvain_matches_exact_on_designated_graphs(make):
    g = make()
    _, best = exact_partition(g)
    for seed in range(5):
        assert modularity(g, louvain(g, seed=seed)) == pytest.approx(best, abs=1e-9)


def test_louvain_deterministic(rng):
    g = random_weighted_graph(rng, n_min=15, n_max=20, p=0.2)
    assert louvain(g, 1.0, 7) == louvain(g, 1.0, 7)


def test_louvain_levels_monotone(rng):
    for _ in range(30):
        g = random_weighted_graph(rng, n_min=10, n_max=20, p=0.25)
        seed = int(rng.integers(1000))
        scores = [modularity(g, p) for p in louvain_levels(g, 1.0, seed)]
        assert scores == sorted(scores)
        final = modularity(g, louvain(g, 1.0, seed))
        assert final >= max(0.0, modularity(g, singletons(g)))
        assert final >= scores[-1] - 1e-12


def test_louvain_never_negative():
    # a single edge: singletons score -0.5, the pair 0
    g = from_edges([("a", "b", 3)])
    assert modularity(g, louvain(g)) == pytest.approx(0, abs=1e-12)


def test_resolution_changes_granularity():
    g = ring_of_triangles(6)
    coarse = louvain(g, resolution=0.1, seed=1)
    fine = louvain(g, resolution=3.0, seed=1)
    assert coarse.n_communities < fine.n_communities


def test_louvain_rejects_bad_input():
    with pytest.raises(ValueError):
        louvain(two_triangles(), resolution=0)
    with pytest.raises(GraphError):
        louvain(build_graph([]))


def test_louvain_cross_check_on_fixture_subsample():
    from netext import graphio

    g = graphio.from_json((FIXTURES / "golden" / "synthetic_2000" / "graph.json").read_text())
    strength = g.strength()
    top = [g.nodes[i] for i in np.argsort(-strength, kind="stable")[:10]]
    sub = from_edges([(a, b, w) for a, b, w in g.labeled_edges() if a in top and b in top])
    assert sub.n_nodes <= 10
    _, best = exact_partition(sub)
    q = modularity(sub, louvain(sub, seed=42))
    assert q <= best + 1e-12
    assert q >= best - 1e-9


# --- kernels -------------------------------------------------------------------

@pytest.mark.skipif(_kernels.ext_local_moves is None, reason="compiled kernel not built")
def test_python_and_compiled_kernels_agree(rng):
    for _ in range(40):
        g = random_weighted_graph(rng, n_min=5, n_max=40, p=float(rng.uniform(0.05, 0.5)),
                                  integer=bool(rng.integers(2)))
        seed = int(rng.integers(10_000))
        res = float(rng.choice([0.5, 1.0, 2.0]))
        a = louvain_levels(g, res, seed, kernel=_kernels.py_local_moves)
        b = louvain_levels(g, res, seed, kernel=_kernels.ext_local_moves)
        assert a == b


def test_backend_is_reported():
    assert _kernels.BACKEND in ("cython", "python")


# --- summaries -------------------------------------------------------------------

def test_summarize_percentages():
    g = from_edges([("a", "b", 1), ("b", "c", 1), ("c", "d", 1)])
    s = summarize(g, Partition((0, 0, 0, 1)))
    assert [(e.nodes, str(e.size_percent)) for e in s.communities] == [(("a", "b", "c"), "75.00"), (("d",), "25.00")]


def test_summarize_single_community():
    g = complete_graph(5)
    s = summarize(g, one_community(g))
    assert s.count == 1 and str(s.communities[0].size_percent) == "100.00"


def test_summary_ordering_and_sum(rng):
    for _ in range(30):
        g = random_weighted_graph(rng, n_max=20)
        p = louvain(g, seed=int(rng.integers(100)))
        s = summarize(g, p)
        keys = [(-e.size, e.id) for e in s.communities]
        assert keys == sorted(keys)
        assert abs(float(sum(e.size_percent for e in s.communities)) - 100) <= 0.05
        assert sorted(t for e in s.communities for t in e.nodes) == sorted(g.nodes)


def test_summary_can_express_published_bukalapak_result():
    # 65 nodes; three largest groups 15, 15 and 10 words
    sizes = [15, 15, 10, 8, 7, 5, 3, 2]
    words = iter(f"w{i:02d}" for i in range(65))
    groups = [[next(words) for _ in range(k)] for k in sizes]
    s = summarize_groups(groups, 65, 0.481)
    assert s.count == 8
    assert [str(e.size_percent) for e in s.communities[:3]] == ["23.08", "23.08", "15.38"]
    assert f"{s.modularity:.3f}" == "0.481"
