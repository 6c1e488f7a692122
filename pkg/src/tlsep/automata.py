"""DERAs, symbolic DFAs/NFAs, 3-valued DFAs, products and emptiness.

Finite automata here run over integer letters ``0 .. n_letters-1``; for the
symbolic alphabet these are indices into ``Alphabet.symbols``.  Anything with
``initial_states``, ``successors`` and ``is_accepting`` can take part in a
product.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as iproduct
from typing import Iterable, Protocol, Sequence

from .timed import (
    Alphabet,
    Guard,
    RegionWord,
    clocked_word,
    format_region,
)


class AutomatonError(ValueError):
    pass


class DeterminismError(AutomatonError):
    pass


class ResourceLimitExceeded(RuntimeError):
    """An exploration visited more states than its budget allows."""


class Tri(enum.IntEnum):
    REJECT = 0
    ACCEPT = 1
    DONT_CARE = 2

    def __str__(self):
        return "?" if self is Tri.DONT_CARE else str(int(self))


class Recognizer(Protocol):
    n_letters: int

    def initial_states(self) -> Sequence: ...

    def successors(self, state, sym: int) -> Sequence: ...

    def is_accepting(self, state) -> bool: ...


# -- DERA -----------------------------------------------------------------


@dataclass(frozen=True)
class Transition:
    source: str
    letter: str
    guard: Guard
    target: str


@dataclass(frozen=True)
class DERA:
    alphabet: Alphabet
    states: tuple[str, ...]
    initial: str
    accepting: frozenset[str]
    transitions: tuple[Transition, ...]

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        object.__setattr__(self, "transitions", tuple(self.transitions))
        names = set(self.states)
        if len(names) != len(self.states):
            raise AutomatonError("duplicate state names")
        if self.initial not in names:
            raise AutomatonError(f"unknown initial state {self.initial!r}")
        if not self.accepting <= names:
            raise AutomatonError(f"unknown accepting states {sorted(self.accepting - names)}")
        by_key: dict[tuple[str, str], list[Guard]] = {}
        for t in self.transitions:
            if t.source not in names or t.target not in names:
                raise AutomatonError(f"transition {t} uses an unknown state")
            if t.letter not in self.alphabet.letter_index:
                raise AutomatonError(f"transition {t} uses an unknown letter")
            if t.guard.alphabet != self.alphabet:
                raise AutomatonError(f"guard of {t} is over a different alphabet")
            others = by_key.setdefault((t.source, t.letter), [])
            for g in others:
                if not g.intersect(t.guard).is_empty():
                    raise DeterminismError(
                        f"overlapping guards on ({t.source}, {t.letter}): '{g}' and '{t.guard}'"
                    )
            others.append(t.guard)

    @property
    def n_states(self) -> int:
        return len(self.states)

    def is_total(self) -> bool:
        nreg = len(self.alphabet.regions)
        covered: dict[tuple[str, str], int] = {}
        for t in self.transitions:
            key = (t.source, t.letter)
            covered[key] = covered.get(key, 0) + len(t.guard.split())
        return all(
            covered.get((q, a), 0) == nreg for q in self.states for a in self.alphabet.letters
        )

    def with_K(self, K: int) -> "DERA":
        alphabet = self.alphabet.with_K(K)
        return DERA(
            alphabet,
            self.states,
            self.initial,
            self.accepting,
            tuple(Transition(t.source, t.letter, t.guard.rebase(alphabet), t.target) for t in self.transitions),
        )

    def accepts_timed(self, tw: Sequence[tuple[str, Fraction]]) -> bool:
        """Run the concrete clocked word against the guards directly."""
        out: dict[tuple[str, str], list[Transition]] = {}
        for t in self.transitions:
            out.setdefault((t.source, t.letter), []).append(t)
        q = self.initial
        for a, v in clocked_word(tw, self.alphabet):
            for t in out.get((q, a), ()):
                if t.guard.satisfied_by(v):
                    q = t.target
                    break
            else:
                return False
        return q in self.accepting

    def to_dot(self, name: str = "DERA") -> str:
        lines = [f"digraph {name} {{", "  rankdir=LR;", "  __start [shape=point];"]
        ids = {q: f"n{i}" for i, q in enumerate(self.states)}
        for q in self.states:
            shape = "doublecircle" if q in self.accepting else "circle"
            lines.append(f'  {ids[q]} [shape={shape}, label="{_esc(q)}"];')
        lines.append(f"  __start -> {ids[self.initial]};")
        for t in self.transitions:
            label = t.letter if str(t.guard) == "true" else f"{t.letter}, {t.guard}"
            lines.append(f'  {ids[t.source]} -> {ids[t.target]} [label="{_esc(label)}"];')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _esc(s: str) -> str:
    return s.replace("\\", "\\\\").replace('"', '\\"')


# -- DFAs -----------------------------------------------------------------


@dataclass
class SymbolicDFA:
    """Total DFA; ``delta[q][x]`` is the successor of ``q`` on letter ``x``."""

    delta: list[list[int]]
    initial: int
    accepting: frozenset[int]
    n_letters: int
    alphabet: Alphabet | None = None
    names: list[str] | None = field(default=None, repr=False)

    def __post_init__(self):
        self.accepting = frozenset(self.accepting)
        n = len(self.delta)
        if not 0 <= self.initial < n:
            raise AutomatonError("initial state out of range")
        for row in self.delta:
            if len(row) != self.n_letters or any(not 0 <= t < n for t in row):
                raise AutomatonError("transition function must be total and in range")

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def initial_states(self):
        return (self.initial,)

    def successors(self, state, sym):
        return (self.delta[state][sym],)

    def is_accepting(self, state) -> bool:
        return state in self.accepting

    def run(self, word: Iterable[int]) -> int:
        q = self.initial
        for x in word:
            q = self.delta[q][x]
        return q

    def accepts(self, word) -> bool:
        return self.run(_encode(word, self.alphabet)) in self.accepting

    def complement(self) -> "SymbolicDFA":
        return SymbolicDFA(
            [row[:] for row in self.delta],
            self.initial,
            frozenset(range(self.n_states)) - self.accepting,
            self.n_letters,
            self.alphabet,
            self.names,
        )

    def reachable(self) -> list[int]:
        seen = [self.initial]
        mark = {self.initial}
        i = 0
        while i < len(seen):
            for t in self.delta[seen[i]]:
                if t not in mark:
                    mark.add(t)
                    seen.append(t)
            i += 1
        return seen

    def live_states(self) -> set[int]:
        """States from which an accepting state is reachable."""
        preds: list[set[int]] = [set() for _ in range(self.n_states)]
        for q, row in enumerate(self.delta):
            for t in row:
                preds[t].add(q)
        live = set(self.accepting)
        stack = list(live)
        while stack:
            q = stack.pop()
            for p in preds[q]:
                if p not in live:
                    live.add(p)
                    stack.append(p)
        return live

    def to_dot(self, name: str = "DFA") -> str:
        return _table_dot(
            name, self.delta, self.initial,
            lambda q: "doublecircle" if q in self.accepting else "circle",
            self.alphabet, self.names,
        )


@dataclass
class ThreeDFA:
    """Total DFA whose states are labelled accept / reject / don't care."""

    delta: list[list[int]]
    initial: int
    labels: list[Tri]
    n_letters: int
    alphabet: Alphabet | None = None

    def __post_init__(self):
        self.labels = [Tri(x) for x in self.labels]
        if len(self.labels) != len(self.delta):
            raise AutomatonError("one label per state required")
        for row in self.delta:
            if len(row) != self.n_letters or any(not 0 <= t < len(self.delta) for t in row):
                raise AutomatonError("transition function must be total and in range")

    @property
    def n_states(self) -> int:
        return len(self.delta)

    def states_with(self, label: Tri) -> frozenset[int]:
        return frozenset(q for q, x in enumerate(self.labels) if x == label)

    @property
    def A(self):
        return self.states_with(Tri.ACCEPT)

    @property
    def R(self):
        return self.states_with(Tri.REJECT)

    @property
    def E(self):
        return self.states_with(Tri.DONT_CARE)

    def run(self, word) -> Tri:
        q = self.initial
        for x in _encode(word, self.alphabet):
            q = self.delta[q][x]
        return self.labels[q]

    def plus(self) -> SymbolicDFA:
        return SymbolicDFA([r[:] for r in self.delta], self.initial, self.A, self.n_letters, self.alphabet)

    def minus(self) -> SymbolicDFA:
        return SymbolicDFA([r[:] for r in self.delta], self.initial, self.R, self.n_letters, self.alphabet)

    def to_dot(self, name: str = "ThreeDFA") -> str:
        shapes = {Tri.ACCEPT: "doublecircle", Tri.REJECT: "circle", Tri.DONT_CARE: "box"}
        return _table_dot(name, self.delta, self.initial, lambda q: shapes[self.labels[q]], self.alphabet, None)


def three_dfa_plus(D: ThreeDFA) -> SymbolicDFA:
    return D.plus()


def three_dfa_minus(D: ThreeDFA) -> SymbolicDFA:
    return D.minus()


def run_3dfa(D: ThreeDFA, word) -> Tri:
    return D.run(word)


def complement(dfa: SymbolicDFA) -> SymbolicDFA:
    return dfa.complement()


def _encode(word, alphabet: Alphabet | None) -> Iterable[int]:
    word = tuple(word)
    if word and not isinstance(word[0], int):
        if alphabet is None:
            raise AutomatonError("region words need an alphabet")
        return alphabet.encode(word)
    return word


def _symbol_label(alphabet: Alphabet | None, sym: int) -> str:
    if alphabet is None:
        return str(sym)
    a, r = alphabet.symbols[sym]
    return f"{a}, {format_region(r, alphabet)}"


def _table_dot(name, delta, initial, shape_of, alphabet, names) -> str:
    lines = [f"digraph {name} {{", "  rankdir=LR;", "  __start [shape=point];"]
    for q in range(len(delta)):
        label = names[q] if names else str(q)
        lines.append(f'  n{q} [shape={shape_of(q)}, label="{_esc(label)}"];')
    lines.append(f"  __start -> n{initial};")
    for q, row in enumerate(delta):
        grouped: dict[int, list[int]] = {}
        for x, t in enumerate(row):
            grouped.setdefault(t, []).append(x)
        for t, xs in grouped.items():
            label = "\\n".join(_esc(_symbol_label(alphabet, x)) for x in xs)
            lines.append(f'  n{q} -> n{t} [label="{label}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


# -- conversions ----------------------------------------------------------


def dera_to_symbolic_dfa(A: DERA) -> SymbolicDFA:
    """Split every guard into regions; missing pairs go to a fresh sink."""
    alphabet = A.alphabet
    nreg = len(alphabet.regions)
    rindex = alphabet.region_index
    index = {q: i for i, q in enumerate(A.states)}
    sink = len(A.states)
    m = len(alphabet.symbols)
    delta = [[sink] * m for _ in range(sink + 1)]
    assigned = [[False] * m for _ in range(sink)]
    for t in A.transitions:
        q = index[t.source]
        base = alphabet.letter_index[t.letter] * nreg
        for r in t.guard.split():
            x = base + rindex[r]
            if assigned[q][x]:
                raise DeterminismError(f"region {format_region(r, alphabet)} claimed twice at {t.source}")
            assigned[q][x] = True
            delta[q][x] = index[t.target]
    names = list(A.states) + ["⊥"]
    return SymbolicDFA(delta, index[A.initial], frozenset(index[q] for q in A.accepting), m, alphabet, names)


def symbolic_dfa_to_dera(C: SymbolicDFA, alphabet: Alphabet | None = None) -> DERA:
    """Interpret a symbolic DFA as a DERA with region guards, dropping dead states."""
    alphabet = alphabet or C.alphabet
    live = C.live_states()
    order = [q for q in C.reachable() if q in live]
    if C.initial not in live:
        return DERA(alphabet, ("q0",), "q0", frozenset(), ())
    name = {q: f"q{i}" for i, q in enumerate(order)}
    transitions = []
    for q in order:
        for x, t in enumerate(C.delta[q]):
            if t in live:
                a, r = alphabet.symbols[x]
                transitions.append(Transition(name[q], a, Guard.of_region(alphabet, r), name[t]))
    return DERA(
        alphabet,
        tuple(name[q] for q in order),
        name[C.initial],
        frozenset(name[q] for q in order if q in C.accepting),
        tuple(transitions),
    )


# -- products and emptiness -----------------------------------------------


class Product:
    """Lazy synchronous product; accepting iff every component accepts."""

    def __init__(self, *components: Recognizer):
        if not components:
            raise AutomatonError("empty product")
        n = components[0].n_letters
        for c in components:
            if c.n_letters != n:
                raise AutomatonError("alphabet mismatch in product")
            ca, c0 = getattr(c, "alphabet", None), getattr(components[0], "alphabet", None)
            if ca is not None and c0 is not None and ca != c0:
                raise AutomatonError("alphabet mismatch in product")
        self.components = components
        self.n_letters = n

    def initial_states(self):
        return list(iproduct(*(c.initial_states() for c in self.components)))

    def successors(self, state, sym):
        return list(iproduct(*(c.successors(s, sym) for c, s in zip(self.components, state))))

    def is_accepting(self, state) -> bool:
        return all(c.is_accepting(s) for c, s in zip(self.components, state))


def product_intersection(components: Sequence[Recognizer]) -> Product:
    return Product(*components)


def shortest_accepted(nfa: Recognizer, limit: int | None = None) -> tuple[int, ...] | None:
    """Shortlex-least accepted word (BFS in letter order), or None if empty.

    With ``limit``, raise ResourceLimitExceeded once more states are visited.
    """
    parent: dict = {}
    queue = deque()
    for s in nfa.initial_states():
        if s in parent:
            continue
        parent[s] = None
        if nfa.is_accepting(s):
            return ()
        queue.append(s)
    n = nfa.n_letters
    while queue:
        s = queue.popleft()
        for x in range(n):
            for t in nfa.successors(s, x):
                if t in parent:
                    continue
                parent[t] = (s, x)
                if limit is not None and len(parent) > limit:
                    raise ResourceLimitExceeded(f"explored more than {limit} states")
                if nfa.is_accepting(t):
                    word = []
                    while parent[t] is not None:
                        t, y = parent[t]
                        word.append(y)
                    return tuple(reversed(word))
                queue.append(t)
    return None


def is_empty(nfa: Recognizer) -> bool:
    return shortest_accepted(nfa) is None


def included(small: SymbolicDFA, big: SymbolicDFA) -> bool:
    """``L(small) ⊆ L(big)`` for total DFAs."""
    return is_empty(Product(small, big.complement()))


def disjoint(a: Recognizer, b: Recognizer) -> bool:
    return is_empty(Product(a, b))


def universal_dfa(n_letters: int, alphabet: Alphabet | None = None) -> SymbolicDFA:
    return SymbolicDFA([[0] * n_letters], 0, frozenset({0}), n_letters, alphabet)


def empty_dfa(n_letters: int, alphabet: Alphabet | None = None) -> SymbolicDFA:
    return SymbolicDFA([[0] * n_letters], 0, frozenset(), n_letters, alphabet)


def decode_word(word: Sequence[int], alphabet: Alphabet) -> RegionWord:
    return alphabet.decode(word)
