# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the hot kernels; see ``_pykernels`` for the reference."""

import numpy as np
cimport numpy as cnp

ctypedef long long i64

cdef i64 INF = 1LL << 40
cdef i64 LE_ZERO = 1


def close_dbm(dbm):
    """Floyd-Warshall closure in place; False iff a negative cycle exists.

    Accepts a list of lists; the closed bounds are written back into it.
    """
    cdef Py_ssize_t n = len(dbm)
    if n == 0:
        return True
    arr = np.array(dbm, dtype=np.int64)
    cdef i64[:, ::1] d = arr
    cdef Py_ssize_t i, j, k
    cdef i64 dik, dkj, s
    cdef bint ok = True
    for k in range(n):
        for i in range(n):
            dik = d[i, k]
            if dik >= INF:
                continue
            for j in range(n):
                dkj = d[k, j]
                if dkj >= INF:
                    continue
                s = dik + dkj - ((dik | dkj) & 1)
                if s < d[i, j]:
                    d[i, j] = s
        if d[k, k] < LE_ZERO:
            ok = False
            break
    if ok:
        for i in range(n):
            if d[i, i] < LE_ZERO:
                ok = False
                break
    rows = arr.tolist()
    for i in range(n):
        dbm[i][:] = rows[i]
    return ok


def incompatible_pairs(delta, labels):
    """Least fixpoint of pairs driven by a common word to accept/reject."""
    cdef Py_ssize_t n = len(delta)
    if n == 0:
        return []
    cdef Py_ssize_t m = len(delta[0])
    cdef cnp.int64_t[:, ::1] dl = np.ascontiguousarray(np.asarray(delta, dtype=np.int64).reshape(n, m))
    cdef cnp.int64_t[::1] lab = np.asarray(labels, dtype=np.int64)

    # predecessor lists in CSR form, one block per letter
    cdef cnp.int64_t[::1] count = np.zeros(m * n + 1, dtype=np.int64)
    cdef Py_ssize_t q, e, p, p1, q1, a, b, ia, ib
    for q in range(n):
        for e in range(m):
            count[e * n + dl[q, e] + 1] += 1
    for a in range(m * n):
        count[a + 1] += count[a]
    cdef cnp.int64_t[::1] fill = np.array(count[: m * n], dtype=np.int64)
    cdef cnp.int64_t[::1] pred = np.zeros(n * m, dtype=np.int64)
    for q in range(n):
        for e in range(m):
            a = e * n + dl[q, e]
            pred[fill[a]] = q
            fill[a] += 1

    bad_arr = np.zeros((n, n), dtype=np.uint8)
    cdef cnp.uint8_t[:, ::1] bad = bad_arr
    cdef cnp.int64_t[::1] stack = np.empty(2 * n * n + 2, dtype=np.int64)
    cdef Py_ssize_t top = 0
    for p in range(n):
        if lab[p] != 1:
            continue
        for q in range(n):
            if lab[q] == 0:
                bad[p, q] = 1
                bad[q, p] = 1
                stack[top] = p
                stack[top + 1] = q
                top += 2
    while top > 0:
        top -= 2
        p = stack[top]
        q = stack[top + 1]
        for e in range(m):
            a = e * n + p
            b = e * n + q
            if count[a] == count[a + 1]:
                continue
            for ib in range(count[b], count[b + 1]):
                q1 = pred[ib]
                for ia in range(count[a], count[a + 1]):
                    p1 = pred[ia]
                    if not bad[p1, q1]:
                        bad[p1, q1] = 1
                        bad[q1, p1] = 1
                        stack[top] = p1
                        stack[top + 1] = q1
                        top += 2
    return bad_arr.astype(bool).tolist()
