"""Teachers answering membership and inclusion queries on region words."""

from __future__ import annotations

import abc
import enum
import threading
from dataclasses import dataclass

from .automata import DERA, Product, SymbolicDFA, dera_to_symbolic_dfa, shortest_accepted
from .consistency import is_consistent
from .regions import build_regl_automaton
from .timed import Alphabet, RegionWord


class ProtocolError(RuntimeError):
    """A query the protocol does not allow (e.g. membership of an inconsistent word)."""


class InclusionMode(enum.Enum):
    CANDIDATE_IN_TARGET = "candidate-in-target"
    TARGET_IN_CANDIDATE = "target-in-candidate"
    CANDIDATE_IN_TARGET_COMPLEMENT = "candidate-in-target-complement"


@dataclass(frozen=True)
class QueryStats:
    mq: int = 0
    iq: int = 0
    eq: int = 0

    def as_tuple(self) -> tuple[int, int, int]:
        return self.mq, self.iq, self.eq


@dataclass(frozen=True)
class Counterexample:
    word: RegionWord
    mode: InclusionMode


class Teacher(abc.ABC):
    """The semantic query interface a learner talks to."""

    alphabet: Alphabet

    @abc.abstractmethod
    def membership(self, rw: RegionWord) -> bool: ...

    @abc.abstractmethod
    def inclusion(self, C: SymbolicDFA, mode: InclusionMode) -> RegionWord | None: ...

    @abc.abstractmethod
    def stats(self) -> QueryStats: ...

    @abc.abstractmethod
    def _count_eq(self) -> None: ...

    def equivalence(self, C: SymbolicDFA) -> Counterexample | None:
        """Two inclusions: candidate in target, then target in candidate."""
        self._count_eq()
        for mode in (InclusionMode.CANDIDATE_IN_TARGET, InclusionMode.TARGET_IN_CANDIDATE):
            cex = self.inclusion(C, mode)
            if cex is not None:
                return Counterexample(cex, mode)
        return None

    def completeness(self, plus: SymbolicDFA, minus: SymbolicDFA) -> Counterexample | None:
        """Strongly accepted words must be in the target, strongly rejected ones outside."""
        self._count_eq()
        cex = self.inclusion(plus, InclusionMode.CANDIDATE_IN_TARGET)
        if cex is not None:
            return Counterexample(cex, InclusionMode.CANDIDATE_IN_TARGET)
        cex = self.inclusion(minus, InclusionMode.CANDIDATE_IN_TARGET_COMPLEMENT)
        if cex is not None:
            return Counterexample(cex, InclusionMode.CANDIDATE_IN_TARGET_COMPLEMENT)
        return None


class DeraTeacher(Teacher):
    """Teacher that knows the target language through a reference DERA."""

    def __init__(self, reference: DERA):
        self.reference = reference
        self.alphabet = reference.alphabet
        self.target = dera_to_symbolic_dfa(reference)
        self.target_complement = self.target.complement()
        self.regl = build_regl_automaton(self.alphabet)
        self._lock = threading.Lock()
        self._cache: dict[RegionWord, bool] = {}
        self._mq = self._iq = self._eq = 0
        self.rejected_queries = 0

    def membership(self, rw: RegionWord) -> bool:
        rw = tuple(rw)
        with self._lock:
            cached = self._cache.get(rw)
            if cached is not None:
                return cached
        if not is_consistent(rw, self.alphabet):
            with self._lock:
                self.rejected_queries += 1
            raise ProtocolError(f"membership query on inconsistent word {rw}")
        answer = self.target.accepts(rw)
        with self._lock:
            if rw not in self._cache:
                self._cache[rw] = answer
                self._mq += 1
        return answer

    def inclusion(self, C: SymbolicDFA, mode: InclusionMode) -> RegionWord | None:
        if C.n_letters != len(self.alphabet.symbols) or (C.alphabet not in (None, self.alphabet)):
            raise ValueError("candidate is over a different symbolic alphabet")
        with self._lock:
            self._iq += 1
        if mode is InclusionMode.CANDIDATE_IN_TARGET:
            prod = Product(C, self.regl, self.target_complement)
        elif mode is InclusionMode.TARGET_IN_CANDIDATE:
            prod = Product(self.target, self.regl, C.complement())
        else:
            prod = Product(C, self.regl, self.target)
        word = shortest_accepted(prod)
        return None if word is None else self.alphabet.decode(word)

    def _count_eq(self):
        with self._lock:
            self._eq += 1

    def stats(self) -> QueryStats:
        with self._lock:
            return QueryStats(self._mq, self._iq, self._eq)
