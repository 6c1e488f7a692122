"""Three-valued observation table over region words."""

from __future__ import annotations

from ..automata import ThreeDFA, Tri
from ..consistency import is_consistent
from ..teacher import Teacher
from ..timed import Alphabet, RegionWord


def canonical_value(w: RegionWord, teacher: Teacher) -> Tri:
    """``?`` for inconsistent words (no query issued), else the membership answer."""
    if not is_consistent(tuple(w), teacher.alphabet):
        return Tri.DONT_CARE
    return Tri.ACCEPT if teacher.membership(tuple(w)) else Tri.REJECT


class ObservationTable:
    def __init__(self, alphabet: Alphabet, teacher: Teacher):
        self.alphabet = alphabet
        self.teacher = teacher
        self.symbols = alphabet.symbols
        self.S: list[RegionWord] = [()]
        self.E: list[RegionWord] = [()]
        self._in_S = {()}
        self._in_E = {()}
        self.T: dict[RegionWord, Tri] = {}

    def value(self, w: RegionWord) -> Tri:
        v = self.T.get(w)
        if v is None:
            v = self.T[w] = canonical_value(w, self.teacher)
        return v

    def row(self, s: RegionWord) -> tuple[Tri, ...]:
        if not is_consistent(s, self.alphabet):
            # every extension of an inconsistent word is inconsistent
            return (Tri.DONT_CARE,) * len(self.E)
        return tuple(self.value(s + e) for e in self.E)

    def add_prefix(self, s: RegionWord) -> bool:
        """Add ``s`` and all its prefixes to S; True if anything was new."""
        added = False
        for i in range(len(s) + 1):
            p = tuple(s[:i])
            if p not in self._in_S:
                self._in_S.add(p)
                self.S.append(p)
                added = True
        return added

    def add_suffix(self, e: RegionWord) -> bool:
        e = tuple(e)
        if e in self._in_E:
            return False
        self._in_E.add(e)
        self.E.append(e)
        return True

    def _rows(self):
        return {s: self.row(s) for s in self.S}

    def find_unclosed(self) -> RegionWord | None:
        rows = self._rows()
        known = set(rows.values())
        for s in self.S:
            for x in self.symbols:
                ext = s + (x,)
                if ext in self._in_S:
                    continue
                r = self.row(ext)
                if r not in known:
                    return ext
        return None

    def find_inconsistency(self) -> RegionWord | None:
        """A suffix ``x.e`` separating two equal rows of S, if any."""
        groups: dict[tuple, list[RegionWord]] = {}
        for s in self.S:
            groups.setdefault(self.row(s), []).append(s)
        for members in groups.values():
            if len(members) < 2:
                continue
            first = members[0]
            for other in members[1:]:
                for x in self.symbols:
                    r1 = self.row(first + (x,))
                    r2 = self.row(other + (x,))
                    if r1 != r2:
                        for e, v1, v2 in zip(self.E, r1, r2):
                            if v1 != v2:
                                return (x,) + e
        return None

    def close(self) -> None:
        """Make the table closed and consistent, filling every needed cell."""
        while True:
            ext = self.find_unclosed()
            if ext is not None:
                self.add_prefix(ext)
                continue
            suffix = self.find_inconsistency()
            if suffix is not None:
                self.add_suffix(suffix)
                continue
            return

    def representatives(self) -> list[RegionWord]:
        """First member of S for each distinct row, in S order."""
        seen = {}
        for s in self.S:
            seen.setdefault(self.row(s), s)
        return list(seen.values())

    def to_3dfa(self) -> ThreeDFA:
        reps = self.representatives()
        state_of = {self.row(s): i for i, s in enumerate(reps)}
        delta = []
        for s in reps:
            out = []
            for x in self.symbols:
                r = self.row(s + (x,))
                if r not in state_of:
                    raise ValueError("observation table is not closed")
                out.append(state_of[r])
            delta.append(out)
        labels = [self.row(s)[0] for s in reps]
        return ThreeDFA(delta, 0, labels, len(self.symbols), self.alphabet)

    def process_completeness_cex(self, cex: RegionWord, D: ThreeDFA) -> RegionWord:
        """Rivest-Schapire search for a witnessing suffix; the suffix is added to E."""
        cex = tuple(cex)
        reps = self.representatives()
        index = self.alphabet.symbol_index
        encoded = [index[x] for x in cex]
        states = [D.initial]
        for x in encoded:
            states.append(D.delta[states[-1]][x])

        def alpha(i):
            return self.value(reps[states[i]] + cex[i:])

        lo, hi = 0, len(cex)
        a_lo, a_hi = alpha(lo), alpha(hi)
        if a_lo == a_hi:
            raise ValueError("word is not misclassified by the hypothesis")
        while hi - lo > 1:
            mid = (lo + hi) // 2
            a_mid = alpha(mid)
            if a_mid != a_lo:
                hi, a_hi = mid, a_mid
            else:
                lo, a_lo = mid, a_mid
        suffix = cex[lo + 1:]
        if not self.add_suffix(suffix):
            raise AssertionError("witnessing suffix already in E")
        return suffix

    def cells(self):
        """Every filled ``(s, e)`` pair of S and S.Sigma (for audits)."""
        for s in self.S:
            for u in [s] + [s + (x,) for x in self.symbols]:
                for e, v in zip(self.E, self.row(u)):
                    yield u + e, v
