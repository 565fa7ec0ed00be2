# cython: language_level=3
"""Compiled Louvain local-move phase; see ``netext._pykernel`` for the
reference version this must match exactly."""
import numpy as np
cimport numpy as cnp

cnp.import_array()


def local_moves(cnp.int64_t[::1] indptr, cnp.int64_t[::1] indices,
                double[::1] weights, double[::1] strength,
                cnp.int64_t[::1] comm, cnp.int64_t[::1] order,
                double resolution, double m2):
    cdef Py_ssize_t n = strength.shape[0]
    cdef Py_ssize_t idx, p, t, nc
    cdef cnp.int64_t i, j, ci, cj, cc, best
    cdef double ki, own, stay_gain, gain, best_gain
    cdef double tol = 1e-12 * m2
    cdef bint found
    cdef long total_moves = 0, moves

    tot_arr = np.zeros(n, dtype=np.float64)
    link_arr = np.zeros(n, dtype=np.float64)
    seen_arr = np.zeros(n, dtype=np.uint8)
    cand_arr = np.zeros(n, dtype=np.int64)
    cdef double[::1] tot = tot_arr
    cdef double[::1] link = link_arr
    cdef unsigned char[::1] seen = seen_arr
    cdef cnp.int64_t[::1] cand = cand_arr

    for i in range(n):
        tot[comm[i]] += strength[i]

    while True:
        moves = 0
        for idx in range(n):
            i = order[idx]
            ci = comm[i]
            ki = strength[i]
            nc = 0
            for p in range(indptr[i], indptr[i + 1]):
                j = indices[p]
                if j == i:
                    continue
                cj = comm[j]
                if not seen[cj]:
                    seen[cj] = 1
                    link[cj] = 0.0
                    cand[nc] = cj
                    nc += 1
                link[cj] += weights[p]
            tot[ci] -= ki
            own = link[ci] if seen[ci] else 0.0
            stay_gain = own - resolution * tot[ci] * ki / m2
            best = ci
            best_gain = 0.0
            found = False
            for t in range(nc):
                cc = cand[t]
                seen[cc] = 0
                if cc == ci:
                    continue
                gain = link[cc] - resolution * tot[cc] * ki / m2
                if not found or gain > best_gain:
                    best_gain = gain
                    best = cc
                    found = True
            if found and best_gain > stay_gain + tol:
                comm[i] = best
                tot[best] += ki
                moves += 1
            else:
                tot[ci] += ki
        total_moves += moves
        if moves == 0:
            break
    return total_moves
