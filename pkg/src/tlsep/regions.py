"""Classical clock regions and the finite recognizer of consistent region words.

A full region keeps, per clock, the same cell code as a simple constraint
(which already fixes the integer part and whether the fraction is zero) and
additionally the order of the non-zero fractional parts, stored as an ordered
partition of clock indices from smallest to largest fraction.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Iterator

from .timed import Alphabet, Region, RegionWord, format_region


@dataclass(frozen=True)
class FullRegion:
    cells: Region
    order: tuple[tuple[int, ...], ...] = ()

    def __str__(self):
        frac = " < ".join("{" + ",".join(map(str, cls)) + "}" for cls in self.order)
        return f"{self.cells}|{frac}"


def initial_region(alphabet: Alphabet) -> FullRegion:
    return FullRegion((0,) * alphabet.n_clocks, ())


def simple_projection(R: FullRegion) -> Region:
    return R.cells


def next_region(R: FullRegion, K: int) -> FullRegion | None:
    """The immediate time successor, or None for the all-above region."""
    top = 2 * K
    cells = list(R.cells)
    zero = [k for k, c in enumerate(cells) if c % 2 == 0]
    if zero:
        entering = []
        for k in zero:
            cells[k] += 1
            if cells[k] < top + 1:
                entering.append(k)
        order = ((tuple(entering),) if entering else ()) + R.order
        return FullRegion(tuple(cells), order)
    if R.order:
        for k in R.order[-1]:
            cells[k] += 1
        return FullRegion(tuple(cells), R.order[:-1])
    return None


def time_successors(R: FullRegion, K: int) -> list[FullRegion]:
    chain = [R]
    while True:
        nxt = next_region(chain[-1], K)
        if nxt is None:
            return chain
        chain.append(nxt)


def reset(R: FullRegion, clock: int) -> FullRegion:
    cells = list(R.cells)
    cells[clock] = 0
    order = tuple(
        kept for kept in (tuple(k for k in cls if k != clock) for cls in R.order) if kept
    )
    return FullRegion(tuple(cells), order)


@dataclass
class ReglAutomaton:
    """Recognizer of RegL: every state accepting, successor sets per symbol."""

    alphabet: Alphabet
    states: list[FullRegion]
    succ: list[dict[int, tuple[int, ...]]] = field(repr=False)

    @property
    def n_letters(self) -> int:
        return len(self.alphabet.symbols)

    def initial_states(self) -> tuple[int, ...]:
        return (0,)

    def successors(self, state: int, sym: int) -> tuple[int, ...]:
        return self.succ[state].get(sym, ())

    def is_accepting(self, state: int) -> bool:
        return True

    def n_transitions(self) -> int:
        return sum(len(t) for d in self.succ for t in d.values())

    def accepts_encoded(self, word: Iterable[int]) -> bool:
        current = {0}
        for sym in word:
            current = {t for s in current for t in self.succ[s].get(sym, ())}
            if not current:
                return False
        return True

    def accepts(self, rw: RegionWord) -> bool:
        index = self.alphabet.symbol_index
        try:
            return self.accepts_encoded(index[s] for s in rw)
        except KeyError:
            return False

    def to_dot(self) -> str:
        syms = self.alphabet.symbols
        lines = ["digraph RegL {", "  rankdir=LR;", '  __start [shape=point];', "  __start -> s0;"]
        for i, R in enumerate(self.states):
            lines.append(f'  s{i} [shape=doublecircle, label="{_dot_escape(str(R))}"];')
        for i, d in enumerate(self.succ):
            for sym, targets in sorted(d.items()):
                a, r = syms[sym]
                label = _dot_escape(f"{a}, {format_region(r, self.alphabet)}")
                for t in targets:
                    lines.append(f'  s{i} -> s{t} [label="{label}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_text(self) -> str:
        syms = self.alphabet.symbols
        out = [f"regl letters={' '.join(self.alphabet.letters)} K={self.alphabet.K}"]
        for i, R in enumerate(self.states):
            out.append(f"state s{i} {R}")
        for i, d in enumerate(self.succ):
            for sym, targets in sorted(d.items()):
                a, r = syms[sym]
                for t in targets:
                    out.append(f"edge s{i} ({a}, {format_region(r, self.alphabet)}) s{t}")
        return "\n".join(out) + "\n"


def _dot_escape(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


@lru_cache(maxsize=32)
def build_regl_automaton(alphabet: Alphabet) -> ReglAutomaton:
    K = alphabet.K
    rindex = alphabet.region_index
    nreg = len(alphabet.regions)
    init = initial_region(alphabet)
    states = [init]
    index = {init: 0}
    succ: list[dict[int, tuple[int, ...]]] = []
    queue = deque([0])
    while queue:
        s = queue.popleft()
        out: dict[int, set[int]] = {}
        for R in time_successors(states[s], K):
            r = rindex[R.cells]
            for li in range(alphabet.n_clocks):
                target = reset(R, li)
                t = index.get(target)
                if t is None:
                    t = index[target] = len(states)
                    states.append(target)
                    queue.append(t)
                out.setdefault(li * nreg + r, set()).add(t)
        while len(succ) <= s:
            succ.append({})
        succ[s] = {sym: tuple(sorted(ts)) for sym, ts in out.items()}
    return ReglAutomaton(alphabet, states, succ)


def regl_membership(rw: RegionWord, alphabet: Alphabet) -> bool:
    return build_regl_automaton(alphabet).accepts(rw)


def iter_regl_words(alphabet: Alphabet, max_len: int) -> Iterator[RegionWord]:
    """All consistent region words up to ``max_len``, shortlex (test helper)."""
    regl = build_regl_automaton(alphabet)
    syms = alphabet.symbols
    frontier: list[tuple[tuple[int, ...], frozenset[int]]] = [((), frozenset({0}))]
    yield ()
    for _ in range(max_len):
        nxt = []
        for word, current in frontier:
            for sym in range(len(syms)):
                targets = frozenset(t for s in current for t in regl.successors(s, sym))
                if targets:
                    w = word + (sym,)
                    nxt.append((w, targets))
                    yield tuple(syms[i] for i in w)
        frontier = nxt

