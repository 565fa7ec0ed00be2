"""Pure-Python Louvain local-move phase.

Mirrors ``_ext/_louvain.pyx`` operation for operation, including the order
of floating-point arithmetic, so both backends return identical partitions.
"""


def local_moves(indptr, indices, weights, strength, comm, order, resolution, m2):
    """Greedy node moves on a CSR graph until a full pass moves nothing.

    ``comm`` is updated in place.  Self-loop entries (aggregated community
    interiors) count in ``strength`` but not as links to a neighbour.
    Returns the number of moves made.
    """
    n = len(strength)
    ptr = indptr.tolist()
    nbr = indices.tolist()
    wts = weights.tolist()
    k = strength.tolist()
    order = order.tolist()
    c = comm.tolist()
    tot = [0.0] * n
    for i in range(n):
        tot[c[i]] += k[i]
    link = [0.0] * n
    seen = [False] * n
    cand = [0] * n
    tol = 1e-12 * m2
    total_moves = 0
    while True:
        moves = 0
        for i in order:
            ci = c[i]
            ki = k[i]
            nc = 0
            for p in range(ptr[i], ptr[i + 1]):
                j = nbr[p]
                if j == i:
                    continue
                cj = c[j]
                if not seen[cj]:
                    seen[cj] = True
                    link[cj] = 0.0
                    cand[nc] = cj
                    nc += 1
                link[cj] += wts[p]
            tot[ci] -= ki
            own = link[ci] if seen[ci] else 0.0
            stay_gain = own - resolution * tot[ci] * ki / m2
            best = ci
            best_gain = 0.0
            found = False
            for t in range(nc):
                cc = cand[t]
                seen[cc] = False
                if cc == ci:
                    continue
                gain = link[cc] - resolution * tot[cc] * ki / m2
                if not found or gain > best_gain:
                    best_gain = gain
                    best = cc
                    found = True
            if found and best_gain > stay_gain + tol:
                c[i] = best
                tot[best] += ki
                moves += 1
            else:
                tot[ci] += ki
        total_moves += moves
        if moves == 0:
            break
    comm[:] = c
    return total_moves
