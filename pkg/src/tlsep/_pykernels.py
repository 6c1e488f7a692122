"""Pure-Python versions of the hot kernels (fallback for ``_kernels.pyx``).

Difference bounds are integer-encoded as ``2*c + 1`` for ``<= c`` and
``2*c`` for ``< c`` so that ordering of encodings is the ordering of bounds.
"""

INF = 1 << 40
LE_ZERO = 1


def bound_add(a, b):
    if a >= INF or b >= INF:
        return INF
    return a + b - ((a | b) & 1)


def close_dbm(dbm):
    """Floyd-Warshall closure in place; False iff a negative cycle exists.

    ``dbm[i][j]`` bounds ``t_j - t_i``.
    """
    n = len(dbm)
    for k in range(n):
        row_k = dbm[k]
        for i in range(n):
            row_i = dbm[i]
            d_ik = row_i[k]
            if d_ik >= INF:
                continue
            for j in range(n):
                d_kj = row_k[j]
                if d_kj >= INF:
                    continue
                s = d_ik + d_kj - ((d_ik | d_kj) & 1)
                if s < row_i[j]:
                    row_i[j] = s
        if dbm[k][k] < LE_ZERO:
            return False
    for i in range(n):
        if dbm[i][i] < LE_ZERO:
            return False
    return True


def incompatible_pairs(delta, labels):
    """Least fixpoint of pairs driven by a common word to accept/reject.

    ``delta`` is an ``n x m`` successor table, ``labels`` holds 1 (accept),
    0 (reject) or 2 (don't care).  Returns a symmetric ``n x n`` list of bools.
    """
    n = len(delta)
    m = len(delta[0]) if n else 0
    preds = [[[] for _ in range(n)] for _ in range(m)]
    for q in range(n):
        row = delta[q]
        for e in range(m):
            preds[e][row[e]].append(q)
    bad = [[False] * n for _ in range(n)]
    stack = []
    for p in range(n):
        if labels[p] != 1:
            continue
        for q in range(n):
            if labels[q] == 0:
                bad[p][q] = bad[q][p] = True
                stack.append((p, q))
    while stack:
        p, q = stack.pop()
        for e in range(m):
            pp = preds[e][p]
            if not pp:
                continue
            for q1 in preds[e][q]:
                for p1 in pp:
                    if not bad[p1][q1]:
                        bad[p1][q1] = bad[q1][p1] = True
                        stack.append((p1, q1))
    return bad
