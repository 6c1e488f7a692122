"""Separating DFAs for a 3DFA: compatibility analysis, greedy and exact extraction."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .. import kernels
from ..automata import (
    Product,
    ResourceLimitExceeded,
    SymbolicDFA,
    ThreeDFA,
    Tri,
    is_empty,
    shortest_accepted,
)
from ..regions import ReglAutomaton

Pair = tuple[int, int]


def compute_incompatible_pairs(D: ThreeDFA) -> frozenset[Pair]:
    """Unordered pairs ``(p, q)``, ``p < q``, some word drives into (accept, reject)."""
    bad = kernels.incompatible_pairs(D.delta, [int(x) for x in D.labels])
    n = D.n_states
    return frozenset((p, q) for p in range(n) for q in range(p + 1, n) if bad[p][q])


def _bad_masks(n: int, s_bad: Iterable[Pair]) -> list[int]:
    masks = [0] * n
    for p, q in s_bad:
        masks[p] |= 1 << q
        masks[q] |= 1 << p
    return masks


def _members(mask: int) -> tuple[int, ...]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def _set_key(mask: int):
    members = _members(mask)
    return -len(members), members


def maximal_compatible_sets(n: int, s_bad: Iterable[Pair]) -> list[frozenset[int]]:
    """Split sets containing a bad pair until none does, keeping only maximal ones."""
    masks = _bad_masks(n, s_bad)
    family = [(1 << n) - 1] if n else [0]
    while True:
        for idx, T in enumerate(family):
            conflict = next(((q, masks[q] & T) for q in _members(T) if masks[q] & T), None)
            if conflict is not None:
                break
        else:
            break
        q, others = conflict
        q2 = (others & -others).bit_length() - 1
        del family[idx]
        for cand in (T & ~(1 << q), T & ~(1 << q2)):
            if not any(cand & ~U == 0 for U in family):
                family.append(cand)
    family.sort(key=_set_key)
    return [frozenset(_members(T)) for T in family]


def is_compatible(states: Iterable[int], s_bad: frozenset[Pair]) -> bool:
    xs = sorted(states)
    return not any((p, q) in s_bad for i, p in enumerate(xs) for q in xs[i + 1:])


@dataclass
class CompatibilityAnalysis:
    s_bad: frozenset[Pair]
    s_good_max: list[frozenset[int]]

    @classmethod
    def of(cls, D: ThreeDFA) -> "CompatibilityAnalysis":
        s_bad = compute_incompatible_pairs(D)
        return cls(s_bad, maximal_compatible_sets(D.n_states, s_bad))


def extract_candidate(
    D: ThreeDFA,
    s_good_max: list[frozenset[int]] | None = None,
    reuse_targets: bool = False,
) -> SymbolicDFA:
    """Subset-style DFA whose states are maximal compatible sets.

    Targets are the largest set containing the image (ties: least sorted
    indices); with ``reuse_targets`` an already discovered set is preferred.
    """
    if s_good_max is None:
        s_good_max = CompatibilityAnalysis.of(D).s_good_max
    ranked = sorted((sum(1 << q for q in T) for T in s_good_max), key=_set_key)

    def best(image: int, discovered: list[int]) -> int:
        if reuse_targets:
            for T in discovered:
                if image & ~T == 0:
                    return T
        for T in ranked:
            if image & ~T == 0:
                return T
        raise AssertionError("no maximal compatible set covers the image")

    states: list[int] = []
    index: dict[int, int] = {}
    init = best(1 << D.initial, states)
    states.append(init)
    index[init] = 0
    delta: list[list[int]] = []
    i = 0
    while i < len(states):
        members = _members(states[i])
        row = []
        for x in range(D.n_letters):
            image = 0
            for q in members:
                image |= 1 << D.delta[q][x]
            T = best(image, states)
            if T not in index:
                index[T] = len(states)
                states.append(T)
            row.append(index[T])
        delta.append(row)
        i += 1
    accepting_mask = sum(1 << q for q in D.A)
    accepting = frozenset(k for k, T in enumerate(states) if T & accepting_mask)
    names = ["{" + ",".join(map(str, _members(T))) + "}" for T in states]
    return SymbolicDFA(delta, 0, accepting, D.n_letters, D.alphabet, names)


def is_separating(D: ThreeDFA, C: SymbolicDFA) -> bool:
    """``L(D+) ⊆ L(C)`` and ``L(D-) ∩ L(C) = ∅``."""
    return is_empty(Product(D.plus(), C.complement())) and is_empty(Product(D.minus(), C))


# -- exact minimal separating DFA -----------------------------------------


def _inert_states(D: ThreeDFA) -> set[int]:
    """States that reach no accepting or rejecting state; they constrain nothing."""
    preds: list[set[int]] = [set() for _ in range(D.n_states)]
    for q, row in enumerate(D.delta):
        for t in row:
            preds[t].add(q)
    active = {q for q, lab in enumerate(D.labels) if lab != Tri.DONT_CARE}
    stack = list(active)
    while stack:
        q = stack.pop()
        for p in preds[q]:
            if p not in active:
                active.add(p)
                stack.append(p)
    return set(range(D.n_states)) - active


class _Search:
    """Backtracking over transition assignments.

    C-states are numbered in order of first use, so each shape is tried once.
    Letters with identical columns in D share one transition: routing one of
    them like the other only shrinks the set of reachable state pairs.
    """

    def __init__(self, D: ThreeDFA, n: int, bad: list[int], node_limit: int | None):
        self.D = D
        self.n = n
        self.bad = bad
        self.node_limit = node_limit
        self.nodes = 0
        self.inert = _inert_states(D)
        cols: dict[tuple[int, ...], int] = {}
        self.letter_class = []
        for x in range(D.n_letters):
            col = tuple(row[x] for row in D.delta)
            self.letter_class.append(cols.setdefault(col, len(cols)))
        self.reps = list({k: x for x, k in reversed(list(enumerate(self.letter_class)))}.values())
        self.reps.sort(key=lambda x: self.letter_class[x])
        self.m = len(self.reps)

    def run(self) -> SymbolicDFA | None:
        trans = [-1] * (self.n * self.m)
        members = [0] * self.n
        waiting: dict[Pair, list[int]] = {}
        if not self._add(self.D.initial, 0, trans, members, waiting):
            return None
        result = self._search(trans, members, waiting, 1)
        if result is None:
            return None
        trans, members, used = result
        accept = sum(1 << q for q in self.D.A)
        m = self.m
        delta = [
            [max(trans[c * m + k], 0) for k in self.letter_class]
            for c in range(used)
        ]
        accepting = frozenset(c for c in range(used) if members[c] & accept)
        return SymbolicDFA(delta, 0, accepting, self.D.n_letters, self.D.alphabet)

    def _add(self, q, c, trans, members, waiting) -> bool:
        """D-state q and C-state c are reached together; propagate, False on conflict."""
        stack = [(q, c)]
        delta = self.D.delta
        bad = self.bad
        inert = self.inert
        reps = self.reps
        m = self.m
        while stack:
            q, c = stack.pop()
            bit = 1 << q
            if members[c] & bit or q in inert:
                continue
            if bad[q] & members[c]:
                return False
            members[c] |= bit
            row = delta[q]
            for k in range(m):
                t = trans[c * m + k]
                if t < 0:
                    waiting.setdefault((c, k), []).append(row[reps[k]])
                else:
                    stack.append((row[reps[k]], t))
        return True

    def _options(self, pending, members, used) -> list[int]:
        """Targets not immediately in conflict with the states sent there."""
        bad = self.bad
        mask = 0
        for q in pending:
            if q in self.inert:
                continue
            if bad[q] & mask:
                return []
            mask |= 1 << q
        conflicts = 0
        for q in _members(mask):
            conflicts |= bad[q]
        out = [t for t in range(used) if not conflicts & members[t]]
        if used < self.n:
            out.append(used)
        return out

    def _search(self, trans, members, waiting, used):
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise ResourceLimitExceeded(f"exact search exceeded {self.node_limit} nodes")
        if not waiting:
            return trans, members, used
        # most constrained open transition first (forward checking)
        best_key, best_opts = None, None
        for key in sorted(waiting):
            opts = self._options(waiting[key], members, used)
            if best_opts is None or len(opts) < len(best_opts):
                best_key, best_opts = key, opts
                if len(opts) <= 1:
                    break
        c, k = best_key
        for t in best_opts:
            trans2 = trans[:]
            trans2[c * self.m + k] = t
            members2 = members[:]
            waiting2 = {key: v[:] for key, v in waiting.items()}
            pending = waiting2.pop((c, k))
            if all(self._add(q, t, trans2, members2, waiting2) for q in pending):
                found = self._search(trans2, members2, waiting2, max(used, t + 1))
                if found is not None:
                    return found
        return None


def _clique_bound(D: ThreeDFA, bad: list[int]) -> int:
    """Size of a greedily grown clique of pairwise incompatible reachable states.

    Reachable states of such a clique must land in distinct states of any
    separating DFA.
    """
    reach = D.plus().reachable()
    mask = sum(1 << q for q in reach)
    best = 1
    for start in reach:
        clique = 1 << start
        cand = bad[start] & mask
        while cand:
            q = max(_members(cand), key=lambda v: bin(bad[v] & cand).count("1"))
            clique |= 1 << q
            cand &= bad[q]
        best = max(best, bin(clique).count("1"))
    return best


def exact_minimal_consistent_dfa(
    D: ThreeDFA, max_states: int = 8, node_limit: int | None = None
) -> SymbolicDFA | None:
    """Smallest separating DFA with at most ``max_states`` states, or None."""
    bad = _bad_masks(D.n_states, compute_incompatible_pairs(D))
    for n in range(_clique_bound(D, bad), max_states + 1):
        found = _Search(D, n, bad, node_limit).run()
        if found is not None:
            return found
    return None


def no_separating_dfa_with(D: ThreeDFA, n: int) -> bool:
    """Exhaustively certify that no separating DFA has ``n`` states or fewer.

    Runs the plain search for every size, without the clique shortcut.
    """
    bad = _bad_masks(D.n_states, compute_incompatible_pairs(D))
    return all(_Search(D, k, bad, None).run() is None for k in range(1, n + 1))


# -- strong completeness ---------------------------------------------------


class _SubsetComplement:
    """Determinized complement of an all-accepting NFA: accept iff the subset is empty."""

    def __init__(self, nfa: ReglAutomaton):
        self.nfa = nfa
        self.n_letters = nfa.n_letters
        self.alphabet = nfa.alphabet

    def initial_states(self):
        return (frozenset(self.nfa.initial_states()),)

    def successors(self, state, sym):
        return (frozenset(t for s in state for t in self.nfa.successors(s, sym)),)

    def is_accepting(self, state) -> bool:
        return not state


def check_strong_completeness(D: ThreeDFA, regl: ReglAutomaton, limit: int = 200_000) -> bool:
    """Every strongly accepted or rejected word is consistent.

    Raises ResourceLimitExceeded if the subset construction grows past ``limit``.
    """
    outside = _SubsetComplement(regl)
    for part in (D.plus(), D.minus()):
        if shortest_accepted(Product(part, outside), limit=limit) is not None:
            return False
    return True
