"""Time the Louvain local-move kernels: compiled extension vs pure Python.

    python3 benchmarks/bench_louvain.py [--nodes 10000] [--edges 100000] [--repeat 3]

Both kernels must produce the same partition; the script checks that and
reports the best-of-N wall time for each.
"""
from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from netext import _kernels
from netext.community import louvain, modularity
from netext.wordgraph import from_edges


def planted_graph(n: int, m: int, blocks: int, p_in: float, seed: int):
    rng = np.random.default_rng(seed)
    block = rng.integers(0, blocks, size=n)
    members = [np.flatnonzero(block == b) for b in range(blocks)]
    edges = {}
    while len(edges) < m:
        i = int(rng.integers(n))
        if rng.random() < p_in:
            pool = members[block[i]]
            j = int(pool[rng.integers(len(pool))])
        else:
            j = int(rng.integers(n))
        if i != j:
            edges[(min(i, j), max(i, j))] = float(rng.integers(1, 5))
    return from_edges([(f"w{i:06d}", f"w{j:06d}", w) for (i, j), w in edges.items()])


def best_time(fn, repeat: int):
    best, result = float("inf"), None
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--nodes", type=int, default=10_000)
    ap.add_argument("--edges", type=int, default=100_000)
    ap.add_argument("--blocks", type=int, default=50)
    ap.add_argument("--p-in", type=float, default=0.8, help="share of edges inside a planted block")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)

    graph = planted_graph(args.nodes, args.edges, args.blocks, args.p_in, args.seed)
    print(f"graph: {graph.n_nodes} nodes, {graph.n_edges} edges")
    kernels = {"python": _kernels.py_local_moves}
    if _kernels.ext_local_moves is not None:
        kernels["cython"] = _kernels.ext_local_moves
    else:
        print("compiled kernel not available; timing the Python kernel only")

    timings, parts = {}, {}
    for name, kernel in kernels.items():
        timings[name], parts[name] = best_time(lambda: louvain(graph, seed=42, kernel=kernel), args.repeat)
        p = parts[name]
        print(f"{name:>7}: {timings[name]:.3f}s  communities={p.n_communities}  M={modularity(graph, p):.6f}")

    if len(parts) == 2:
        if parts["python"] != parts["cython"]:
            print("kernels disagree", file=sys.stderr)
            return 1
        print(f"speedup: {timings['python'] / timings['cython']:.1f}x (identical partitions)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
