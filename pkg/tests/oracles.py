"""Brute-force reference implementations used only by the tests."""

from collections import deque
from fractions import Fraction
from itertools import combinations, product

from tlsep.automata import SymbolicDFA, ThreeDFA, Tri
from tlsep.timed import Alphabet


def lp_feasible(rw, alphabet: Alphabet) -> bool:
    """Consistency by exact Fourier-Motzkin-free search: try every ordering.

    Timestamps are rationals with denominator ``n+1``; for a difference system
    with integer bounds a solution exists iff one exists on that grid (the
    fractional parts can be spread evenly in any realisable order).
    """
    n = len(rw)
    if n == 0:
        return True
    den = n + 1
    K = alphabet.K
    horizon = (K + 1) * n + 1
    idx = alphabet.letter_index

    def ok_cell(cell, v):
        if cell == 2 * K + 1:
            return v > K
        if cell % 2 == 0:
            return v == cell // 2
        return cell // 2 < v < cell // 2 + 1

    # depth-first over grid timestamps with pruning
    def go(pos, times, last):
        if pos == n:
            return True
        a, region = rw[pos]
        start = times[-1]
        for step in range(0, horizon * den + 1):
            t = start + Fraction(step, den)
            if all(ok_cell(c, t - last[k]) for k, c in enumerate(region)):
                nl = list(last)
                nl[idx[a]] = t
                if go(pos + 1, times + [t], nl):
                    return True
            # once every clock is past K further delay changes nothing new
            if all(t - last[k] > K for k in range(len(region))):
                break
        return False

    return go(0, [Fraction(0)], [Fraction(0)] * alphabet.n_clocks)


def pair_incompatible(D: ThreeDFA, p: int, q: int) -> bool:
    """Forward search over the pair graph for an (accept, reject) meeting."""
    seen = {(p, q)}
    queue = deque([(p, q)])
    while queue:
        u, v = queue.popleft()
        lu, lv = D.labels[u], D.labels[v]
        if {lu, lv} == {Tri.ACCEPT, Tri.REJECT}:
            return True
        for x in range(D.n_letters):
            nxt = (D.delta[u][x], D.delta[v][x])
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return False


def distinguished_by_words(D: ThreeDFA, p: int, q: int, max_len: int) -> bool:
    """Literal word enumeration up to ``max_len``."""
    for n in range(max_len + 1):
        for w in product(range(D.n_letters), repeat=n):
            u, v = p, q
            for x in w:
                u, v = D.delta[u][x], D.delta[v][x]
            if {D.labels[u], D.labels[v]} == {Tri.ACCEPT, Tri.REJECT}:
                return True
    return False


def brute_maximal_compatible(n: int, bad) -> set[frozenset]:
    bad = {frozenset(p) for p in bad}
    compatible = [
        frozenset(s)
        for k in range(1, n + 1)
        for s in combinations(range(n), k)
        if not any(frozenset(pq) in bad for pq in combinations(s, 2))
    ]
    return {s for s in compatible if not any(s < t for t in compatible)}


def separates(D: ThreeDFA, C: SymbolicDFA) -> bool:
    """Pair reachability: no reachable (A, reject) or (R, accept) pair."""
    seen = {(D.initial, C.initial)}
    queue = deque(seen)
    while queue:
        q, c = queue.popleft()
        if D.labels[q] == Tri.ACCEPT and c not in C.accepting:
            return False
        if D.labels[q] == Tri.REJECT and c in C.accepting:
            return False
        for x in range(D.n_letters):
            nxt = (D.delta[q][x], C.delta[c][x])
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return True


def _labels_forced(D: ThreeDFA, delta) -> bool:
    """Whether some accepting set makes this transition table separate D."""
    need: dict[int, Tri] = {}
    seen = {(D.initial, 0)}
    queue = deque(seen)
    while queue:
        q, c = queue.popleft()
        lab = D.labels[q]
        if lab != Tri.DONT_CARE and need.setdefault(c, lab) != lab:
            return False
        for x in range(D.n_letters):
            nxt = (D.delta[q][x], delta[c][x])
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    return True


def brute_min_separating(D: ThreeDFA, max_states: int) -> int | None:
    m = D.n_letters
    for n in range(1, max_states + 1):
        for flat in product(range(n), repeat=n * m):
            delta = [flat[i * m:(i + 1) * m] for i in range(n)]
            if _labels_forced(D, delta):
                return n
    return None


def random_3dfa(rng, n: int, m: int, p_dc: float = 0.3) -> ThreeDFA:
    delta = [[rng.randrange(n) for _ in range(m)] for _ in range(n)]
    labels = [Tri.DONT_CARE if rng.random() < p_dc else Tri(rng.randrange(2)) for _ in range(n)]
    return ThreeDFA(delta, 0, labels, m)


def random_timed_word(rng, alphabet, length: int, denom: int = 4):
    """Timestamps on a 1/denom grid, with delays up to K+1 so every region is hit."""
    t = Fraction(0)
    word = []
    for _ in range(length):
        t += Fraction(rng.randint(0, (alphabet.K + 1) * denom), denom)
        word.append((rng.choice(alphabet.letters), t))
    return tuple(word)
