"""Consistency of region words as feasibility of difference constraints.

Every position ``i`` of a region word contributes, for every clock ``x_s``,
bounds on ``t_i - t_j`` where ``j`` is the last earlier ``s`` (``0`` if none,
``t_0`` being the time origin).  The word is consistent iff this system has a
rational solution.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from typing import Sequence

from . import kernels
from .timed import Alphabet, RegionWord, TimedWord


@dataclass(frozen=True)
class DiffConstraint:
    """``t_i - t_j <= c`` (or ``< c`` when strict)."""

    i: int
    j: int
    c: int
    strict: bool

    def __str__(self):
        return f"t{self.i} - t{self.j} {'<' if self.strict else '<='} {self.c}"


@dataclass(frozen=True)
class DifferenceSystem:
    n: int  # number of positions; variables are t_0 .. t_n
    constraints: tuple[DiffConstraint, ...]

    def dbm(self) -> list[list[int]]:
        """Encoded bound matrix, ``dbm[j][i]`` bounding ``t_i - t_j``."""
        size = self.n + 1
        d = [[kernels.INF] * size for _ in range(size)]
        for k in range(size):
            d[k][k] = kernels.LE_ZERO
        for con in self.constraints:
            b = kernels.encode_bound(con.c, con.strict)
            if b < d[con.j][con.i]:
                d[con.j][con.i] = b
        return d

    def satisfied_by(self, times: Sequence[Fraction]) -> bool:
        for con in self.constraints:
            diff = times[con.i] - times[con.j]
            if diff > con.c or (con.strict and diff == con.c):
                return False
        return True


def build_difference_system(rw: RegionWord, alphabet: Alphabet) -> DifferenceSystem:
    K = alphabet.K
    index = alphabet.letter_index
    last = [0] * alphabet.n_clocks
    seen = set()
    out = []

    def add(i, j, c, strict):
        con = DiffConstraint(i, j, c, strict)
        if con not in seen:
            seen.add(con)
            out.append(con)

    for pos, (a, region) in enumerate(rw, start=1):
        add(pos - 1, pos, 0, False)  # t_{pos-1} <= t_pos
        for k, cell in enumerate(region):
            j = last[k]
            if cell == 2 * K + 1:
                add(j, pos, -K, True)
            elif cell % 2 == 0:
                c = cell // 2
                add(pos, j, c, False)
                add(j, pos, -c, False)
            else:
                d = cell // 2
                add(pos, j, d + 1, True)
                add(j, pos, -d, True)
        last[index[a]] = pos
    return DifferenceSystem(len(rw), tuple(out))


@lru_cache(maxsize=1 << 18)
def is_consistent(rw: RegionWord, alphabet: Alphabet) -> bool:
    """Fast verdict: closure of the encoded bound matrix has no negative diagonal."""
    if not rw:
        return True
    return kernels.close_dbm(build_difference_system(rw, alphabet).dbm())


# -- verdicts -------------------------------------------------------------


@dataclass(frozen=True)
class Consistent:
    word: RegionWord
    alphabet: Alphabet
    consistent = True

    @cached_property
    def witness(self) -> TimedWord:
        return _witness(self.word, self.alphabet)

    def __bool__(self):
        return True


@dataclass(frozen=True)
class Inconsistent:
    system: DifferenceSystem
    consistent = False

    @cached_property
    def certificate(self) -> tuple[DiffConstraint, ...]:
        cycle = negative_cycle(self.system)
        assert cycle is not None
        return cycle

    def __bool__(self):
        return False


ConsistencyVerdict = Consistent | Inconsistent


@lru_cache(maxsize=1 << 16)
def check_consistency(rw: RegionWord, alphabet: Alphabet) -> ConsistencyVerdict:
    if is_consistent(rw, alphabet):
        return Consistent(rw, alphabet)
    return Inconsistent(build_difference_system(rw, alphabet))


def witness_timed_word(rw: RegionWord, alphabet: Alphabet) -> TimedWord:
    verdict = check_consistency(rw, alphabet)
    if not verdict:
        raise ValueError("region word is inconsistent; no witness exists")
    return verdict.witness


# -- negative cycles with (value, strictness) weights ---------------------


def negative_cycle(system: DifferenceSystem) -> tuple[DiffConstraint, ...] | None:
    """Bellman-Ford over weights ``(c, -#strict)`` compared lexicographically.

    A constraint ``t_i - t_j <= c`` is an edge ``j -> i``.  Returns the edges of
    a cycle with negative total weight, or None if the system is feasible.
    """
    size = system.n + 1
    dist = [(0, 0)] * size  # implicit zero-weight source to every vertex
    pred: list[DiffConstraint | None] = [None] * size
    updated = None
    for _ in range(size + 1):
        updated = None
        for con in system.constraints:
            du = dist[con.j]
            cand = (du[0] + con.c, du[1] - (1 if con.strict else 0))
            if cand < dist[con.i]:
                dist[con.i] = cand
                pred[con.i] = con
                updated = con.i
        if updated is None:
            return None
    # walk back far enough to land on the cycle
    v = updated
    for _ in range(size):
        v = pred[v].j
    cycle = []
    u = v
    while True:
        con = pred[u]
        cycle.append(con)
        u = con.j
        if u == v:
            break
    cycle.reverse()
    return tuple(cycle)


def cycle_weight(cycle: Sequence[DiffConstraint]) -> tuple[int, int]:
    return sum(c.c for c in cycle), -sum(1 for c in cycle if c.strict)


# -- witnesses ------------------------------------------------------------

_INF = None


def _lt(a, b):
    """Strict order on rational bounds ``(value, strict)``; None is +inf."""
    if b is _INF:
        return a is not _INF
    if a is _INF:
        return False
    return a[0] < b[0] or (a[0] == b[0] and a[1] and not b[1])


def _add(a, b):
    if a is _INF or b is _INF:
        return _INF
    return a[0] + b[0], a[1] or b[1]


def _close(d):
    n = len(d)
    for k in range(n):
        for i in range(n):
            if d[i][k] is _INF:
                continue
            for j in range(n):
                s = _add(d[i][k], d[k][j])
                if _lt(s, d[i][j]):
                    d[i][j] = s


def _witness(rw: RegionWord, alphabet: Alphabet) -> TimedWord:
    """Fix timestamps left to right at the midpoint of their feasible range."""
    system = build_difference_system(rw, alphabet)
    size = system.n + 1
    d = [[_INF] * size for _ in range(size)]
    for k in range(size):
        d[k][k] = (Fraction(0), False)
    for con in system.constraints:
        b = (Fraction(con.c), con.strict)
        if _lt(b, d[con.j][con.i]):
            d[con.j][con.i] = b
    _close(d)
    times = [Fraction(0)]
    for i in range(1, size):
        lo, lo_strict = -d[i][0][0], d[i][0][1]
        hi = d[0][i]
        if hi is _INF:
            t = lo + 1 if lo_strict else lo
        elif hi[0] == lo:
            t = lo
        else:
            t = (lo + hi[0]) / 2
        times.append(t)
        d[0][i] = (t, False)
        d[i][0] = (-t, False)
        _close(d)
    return tuple((a, times[i]) for i, (a, _) in enumerate(rw, start=1))

