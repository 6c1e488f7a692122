"""Alphabets, event-recording clocks, constraints and the three word domains.

A *region* (simple constraint) is stored as a tuple of cell codes, one per
clock in alphabet order.  For a maximal constant ``K`` the cells of a clock
are numbered ``0 .. 2K+1``::

    0      x = 0
    1      0 < x < 1
    2      x = 1
    ...
    2K     x = K
    2K+1   x > K

so even codes are points and odd codes open unit intervals (or ``> K``).
Region words are tuples of ``(letter, region)`` pairs and timed words are
tuples of ``(letter, Fraction)`` pairs.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Sequence, Union

Region = tuple[int, ...]
SymLetter = tuple[str, Region]
RegionWord = tuple[SymLetter, ...]
TimedWord = tuple[tuple[str, Fraction], ...]
Valuation = tuple[Fraction, ...]
ClockedWord = tuple[tuple[str, Valuation], ...]

Number = Union[int, Fraction, str, float]


class GuardError(ValueError):
    """Base class for malformed guard or region text."""


class EmptyGuardError(GuardError):
    """A conjunction of atomic constraints with an empty solution set."""


class UnknownClockError(GuardError):
    pass


class ConstantTooLargeError(GuardError):
    pass


class TimedWordError(ValueError):
    pass


@dataclass(frozen=True)
class Alphabet:
    """Event letters plus the maximal constant ``K``."""

    letters: tuple[str, ...]
    K: int

    def __post_init__(self):
        object.__setattr__(self, "letters", tuple(self.letters))
        if not self.letters:
            raise ValueError("alphabet must be non-empty")
        if len(set(self.letters)) != len(self.letters):
            raise ValueError(f"duplicate letters in {self.letters}")
        for letter in self.letters:
            if not re.fullmatch(r"[A-Za-z0-9_]+", letter):
                raise ValueError(f"invalid letter name {letter!r}")
        if not isinstance(self.K, int) or self.K < 1:
            raise ValueError(f"K must be a positive integer, got {self.K!r}")

    @property
    def n_clocks(self) -> int:
        return len(self.letters)

    @property
    def n_cells(self) -> int:
        return 2 * self.K + 2

    @property
    def above(self) -> int:
        """Cell code of ``x > K``."""
        return 2 * self.K + 1

    @cached_property
    def clocks(self) -> tuple[str, ...]:
        return tuple(f"x_{letter}" for letter in self.letters)

    @cached_property
    def letter_index(self) -> dict[str, int]:
        return {letter: i for i, letter in enumerate(self.letters)}

    @cached_property
    def clock_index(self) -> dict[str, int]:
        return {clock: i for i, clock in enumerate(self.clocks)}

    @cached_property
    def regions(self) -> tuple[Region, ...]:
        return tuple(itertools.product(range(self.n_cells), repeat=self.n_clocks))

    @cached_property
    def region_index(self) -> dict[Region, int]:
        return {r: i for i, r in enumerate(self.regions)}

    @cached_property
    def symbols(self) -> tuple[SymLetter, ...]:
        """The symbolic alphabet Sigma x Reg in canonical order."""
        return tuple((a, r) for a in self.letters for r in self.regions)

    @cached_property
    def symbol_index(self) -> dict[SymLetter, int]:
        return {s: i for i, s in enumerate(self.symbols)}

    def encode(self, word: Iterable[SymLetter]) -> tuple[int, ...]:
        idx = self.symbol_index
        return tuple(idx[s] for s in word)

    def decode(self, word: Iterable[int]) -> RegionWord:
        syms = self.symbols
        return tuple(syms[i] for i in word)

    def with_K(self, K: int) -> "Alphabet":
        return Alphabet(self.letters, K)


def enumerate_regions(alphabet: Alphabet) -> list[Region]:
    """All ``(2K+2)^|Sigma|`` regions, lexicographic over clocks."""
    return list(alphabet.regions)


# -- valuations ------------------------------------------------------------


def cell_of(value: Fraction, K: int) -> int:
    if value < 0:
        raise ValueError(f"negative clock value {value}")
    if value > K:
        return 2 * K + 1
    n = value.numerator // value.denominator
    return 2 * n if value == n else 2 * n + 1


def cell_bounds(cell: int, K: int) -> tuple[Fraction, bool, Fraction | None, bool]:
    """``(lo, lo_closed, hi, hi_closed)`` of a cell; ``hi`` is None for ``> K``."""
    if cell == 2 * K + 1:
        return Fraction(K), False, None, False
    if cell % 2 == 0:
        c = Fraction(cell // 2)
        return c, True, c, True
    d = cell // 2
    return Fraction(d), False, Fraction(d + 1), False


def as_fraction(x: Number) -> Fraction:
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**9)
    return Fraction(x)


def make_timed_word(pairs: Iterable[tuple[str, Number]], alphabet: Alphabet | None = None) -> TimedWord:
    word = tuple((a, as_fraction(t)) for a, t in pairs)
    last = Fraction(0)
    for a, t in word:
        if alphabet is not None and a not in alphabet.letter_index:
            raise TimedWordError(f"unknown letter {a!r}")
        if t < last:
            raise TimedWordError("timestamps must be non-negative and non-decreasing")
        last = t
    return word


def clocked_word(tw: Sequence[tuple[str, Fraction]], alphabet: Alphabet) -> ClockedWord:
    """Attach to each event the valuation of every recording clock."""
    last = [Fraction(0)] * alphabet.n_clocks
    out = []
    index = alphabet.letter_index
    for a, t in tw:
        out.append((a, tuple(t - s for s in last)))
        last[index[a]] = t
    return tuple(out)


def region_of_valuation(v: Sequence[Fraction], alphabet: Alphabet) -> Region:
    return tuple(cell_of(Fraction(x), alphabet.K) for x in v)


def region_word_of(tw: Sequence[tuple[str, Fraction]], alphabet: Alphabet) -> RegionWord:
    return tuple(
        (a, region_of_valuation(v, alphabet)) for a, v in clocked_word(tw, alphabet)
    )


def valuation_in_region(v: Sequence[Fraction], r: Region, K: int) -> bool:
    for x, cell in zip(v, r):
        lo, lo_closed, hi, hi_closed = cell_bounds(cell, K)
        if x < lo or (x == lo and not lo_closed):
            return False
        if hi is not None and (x > hi or (x == hi and not hi_closed)):
            return False
    return True


# -- guards ----------------------------------------------------------------


@dataclass(frozen=True)
class Interval:
    """One clock's admissible values: integer endpoints, ``hi=None`` unbounded."""

    lo: int = 0
    lo_closed: bool = True
    hi: int | None = None
    hi_closed: bool = False

    def contains(self, x: Fraction) -> bool:
        if x < self.lo or (x == self.lo and not self.lo_closed):
            return False
        if self.hi is None:
            return True
        return x < self.hi or (x == self.hi and self.hi_closed)

    def cell_range(self, K: int) -> tuple[int, int]:
        lo = 2 * self.lo if self.lo_closed else 2 * self.lo + 1
        if self.hi is None:
            hi = 2 * K + 1
        else:
            hi = 2 * self.hi if self.hi_closed else 2 * self.hi - 1
        return lo, hi

    def is_empty(self) -> bool:
        if self.hi is None:
            return False
        if self.lo < self.hi:
            return False
        return not (self.lo == self.hi and self.lo_closed and self.hi_closed)

    def intersect(self, other: "Interval") -> "Interval":
        if self.lo > other.lo:
            lo, lo_closed = self.lo, self.lo_closed
        elif self.lo < other.lo:
            lo, lo_closed = other.lo, other.lo_closed
        else:
            lo, lo_closed = self.lo, self.lo_closed and other.lo_closed
        if self.hi is None:
            hi, hi_closed = other.hi, other.hi_closed
        elif other.hi is None or self.hi < other.hi:
            hi, hi_closed = self.hi, self.hi_closed
        elif self.hi > other.hi:
            hi, hi_closed = other.hi, other.hi_closed
        else:
            hi, hi_closed = self.hi, self.hi_closed and other.hi_closed
        return Interval(lo, lo_closed, hi, hi_closed)

    def format(self, clock: str) -> str | None:
        if self.hi is None:
            if self.lo == 0 and self.lo_closed:
                return None
            return f"{clock}{'>=' if self.lo_closed else '>'}{self.lo}"
        if self.lo == self.hi:
            return f"{clock}={self.lo}"
        upper = f"{'<=' if self.hi_closed else '<'}{self.hi}"
        if self.lo == 0 and self.lo_closed:
            return f"{clock}{upper}"
        lower = f"{self.lo}{'<=' if self.lo_closed else '<'}"
        return f"{lower}{clock}{upper}"


UNBOUNDED = Interval()


@dataclass(frozen=True)
class Guard:
    """A K-constraint, normalised to one interval per clock."""

    alphabet: Alphabet
    intervals: tuple[Interval, ...]

    @classmethod
    def true(cls, alphabet: Alphabet) -> "Guard":
        return cls(alphabet, (UNBOUNDED,) * alphabet.n_clocks)

    @classmethod
    def of_region(cls, alphabet: Alphabet, r: Region) -> "Guard":
        ivs = []
        for cell in r:
            if cell == alphabet.above:
                ivs.append(Interval(alphabet.K, False, None, False))
            elif cell % 2 == 0:
                ivs.append(Interval(cell // 2, True, cell // 2, True))
            else:
                ivs.append(Interval(cell // 2, False, cell // 2 + 1, False))
        return cls(alphabet, tuple(ivs))

    @classmethod
    def parse(cls, text: str, alphabet: Alphabet) -> "Guard":
        return parse_guard(text, alphabet)

    @cached_property
    def cell_ranges(self) -> tuple[tuple[int, int], ...]:
        return tuple(iv.cell_range(self.alphabet.K) for iv in self.intervals)

    def satisfied_by(self, v: Sequence[Fraction]) -> bool:
        """Direct check of a concrete valuation."""
        return all(iv.contains(x) for iv, x in zip(self.intervals, v))

    def contains_region(self, r: Region) -> bool:
        return all(lo <= c <= hi for c, (lo, hi) in zip(r, self.cell_ranges))

    def split(self) -> list[Region]:
        return list(itertools.product(*(range(lo, hi + 1) for lo, hi in self.cell_ranges)))

    def intersect(self, other: "Guard") -> "Guard":
        return Guard(
            self.alphabet,
            tuple(a.intersect(b) for a, b in zip(self.intervals, other.intervals)),
        )

    def is_empty(self) -> bool:
        return any(iv.is_empty() for iv in self.intervals)

    def max_constant(self) -> int:
        m = 0
        for iv in self.intervals:
            m = max(m, iv.lo, iv.hi or 0)
        return m

    def rebase(self, alphabet: Alphabet) -> "Guard":
        if alphabet.letters != self.alphabet.letters or self.max_constant() > alphabet.K:
            raise GuardError(f"cannot move guard {self} to {alphabet}")
        return Guard(alphabet, self.intervals)

    def __str__(self) -> str:
        parts = [iv.format(c) for iv, c in zip(self.intervals, self.alphabet.clocks)]
        parts = [p for p in parts if p is not None]
        return " & ".join(parts) if parts else "true"


def region_satisfies_guard(r: Region, g: Guard) -> bool:
    return g.contains_region(r)


def split_guard(g: Guard) -> list[Region]:
    return g.split()


_NUM = r"(\d+)"
_CLOCK = r"(x_[A-Za-z0-9_]+)"
_ATOM_RE = [
    (re.compile(rf"^{_NUM}\s*(<=|<)\s*{_CLOCK}\s*(<=|<)\s*{_NUM}$"), "between"),
    (re.compile(rf"^{_CLOCK}\s*(<=|>=|=|==|<|>)\s*{_NUM}$"), "cmp"),
    (re.compile(rf"^{_CLOCK}\s+in\s+([\(\[])\s*{_NUM}\s*,\s*{_NUM}\s*([\)\]])$"), "in"),
]


def _atom(text: str, alphabet: Alphabet) -> tuple[int, Interval]:
    for pattern, kind in _ATOM_RE:
        m = pattern.match(text)
        if m is None:
            continue
        if kind == "between":
            lo, op1, clock, op2, hi = m.groups()
            iv = Interval(int(lo), op1 == "<=", int(hi), op2 == "<=")
        elif kind == "in":
            clock, lb, lo, hi, rb = m.groups()
            iv = Interval(int(lo), lb == "[", int(hi), rb == "]")
        else:
            clock, op, c = m.groups()
            c = int(c)
            iv = {
                "=": Interval(c, True, c, True),
                "==": Interval(c, True, c, True),
                "<": Interval(0, True, c, False),
                "<=": Interval(0, True, c, True),
                ">": Interval(c, False, None, False),
                ">=": Interval(c, True, None, False),
            }[op]
        if clock not in alphabet.clock_index:
            raise UnknownClockError(f"unknown clock {clock!r} in {text!r}")
        if iv.lo > alphabet.K or (iv.hi is not None and iv.hi > alphabet.K):
            raise ConstantTooLargeError(f"constant exceeds K={alphabet.K} in {text!r}")
        if iv.is_empty():
            raise EmptyGuardError(f"empty interval {text!r}")
        return alphabet.clock_index[clock], iv
    raise GuardError(f"cannot parse constraint {text!r}")


_CONJ = re.compile(r"\s*(?:&&|&|∧|\band\b)\s*")


def parse_guard(text: str, alphabet: Alphabet) -> Guard:
    text = text.strip()
    ivs = [UNBOUNDED] * alphabet.n_clocks
    if text in ("", "true", "⊤", "T"):
        return Guard(alphabet, tuple(ivs))
    for part in _CONJ.split(text):
        if not part:
            raise GuardError(f"empty conjunct in {text!r}")
        k, iv = _atom(part, alphabet)
        ivs[k] = ivs[k].intersect(iv)
        if ivs[k].is_empty():
            raise EmptyGuardError(f"contradictory constraints on {alphabet.clocks[k]} in {text!r}")
    return Guard(alphabet, tuple(ivs))


# -- textual forms of regions and words -------------------------------------


def format_cell(cell: int, clock: str, K: int) -> str:
    if cell == 2 * K + 1:
        return f"{clock}>{K}"
    if cell % 2 == 0:
        return f"{clock}={cell // 2}"
    d = cell // 2
    return f"{d}<{clock}<{d + 1}"


def format_region(r: Region, alphabet: Alphabet) -> str:
    return " & ".join(format_cell(c, x, alphabet.K) for c, x in zip(r, alphabet.clocks))


def parse_region(text: str, alphabet: Alphabet) -> Region:
    """Parse a simple constraint; every clock must be pinned to one cell."""
    g = parse_guard(text, alphabet)
    cells = g.split()
    if len(cells) != 1:
        raise GuardError(f"{text!r} is not a simple constraint over {alphabet.clocks}")
    return cells[0]


def format_region_word(word: Sequence[SymLetter], alphabet: Alphabet) -> str:
    if not word:
        return "ε"
    return "".join(f"({a}, {format_region(r, alphabet)})" for a, r in word)


_PAIR_RE = re.compile(r"\(\s*([A-Za-z0-9_]+)\s*,([^()]*)\)")


def _pairs(text: str) -> list[tuple[str, str]]:
    text = text.strip()
    if text in ("", "ε", "eps", "epsilon"):
        return []
    out = []
    pos = 0
    for m in _PAIR_RE.finditer(text):
        if text[pos:m.start()].strip():
            raise ValueError(f"unexpected text {text[pos:m.start()]!r}")
        out.append((m.group(1), m.group(2).strip()))
        pos = m.end()
    if text[pos:].strip() or not out:
        raise ValueError(f"cannot parse word {text!r}")
    return out


def parse_region_word(text: str, alphabet: Alphabet) -> RegionWord:
    out = []
    for a, body in _pairs(text):
        if a not in alphabet.letter_index:
            raise ValueError(f"unknown letter {a!r}")
        out.append((a, parse_region(body, alphabet)))
    return tuple(out)


def parse_timed_word(text: str, alphabet: Alphabet | None = None) -> TimedWord:
    return make_timed_word(((a, Fraction(t)) for a, t in _pairs(text)), alphabet)


def format_timed_word(tw: Sequence[tuple[str, Fraction]]) -> str:
    if not tw:
        return "ε"
    return "".join(f"({a},{t})" for a, t in tw)
