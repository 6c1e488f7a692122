"""The learning loop: table, completeness, extraction, equivalence."""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass, field
from typing import Callable

from ..automata import DERA, ResourceLimitExceeded, SymbolicDFA, ThreeDFA, symbolic_dfa_to_dera
from ..consistency import is_consistent
from ..teacher import Counterexample, InclusionMode, QueryStats, Teacher
from ..timed import format_region_word
from .separation import (
    CompatibilityAnalysis,
    check_strong_completeness,
    exact_minimal_consistent_dfa,
    extract_candidate,
    is_separating,
)
from .table import ObservationTable, canonical_value

log = logging.getLogger(__name__)


class IterationCapExceeded(RuntimeError):
    def __init__(self, message: str, dump: str):
        super().__init__(message)
        self.dump = dump


class LearningError(RuntimeError):
    """An internal invariant of the loop failed."""


@dataclass
class LearnOptions:
    extract: str = "greedy"  # or "exact"
    reuse_targets: bool = False
    strong_complete_check: bool = False
    max_iter: int = 200
    exact_max_states: int = 8
    audit: bool = True
    on_record: Callable[[dict], None] | None = None


@dataclass
class LearnResult:
    dfa: SymbolicDFA
    dera: DERA
    iterations: int
    stats: QueryStats
    hypothesis_sizes: list[int]
    trace: list[dict] = field(default_factory=list)
    separation_violations: int = 0
    strong_complete: list[bool | None] = field(default_factory=list)
    table_shape: tuple[int, int] = (0, 0)

    @property
    def n_states(self) -> int:
        return self.dera.n_states


def check_completeness(D: ThreeDFA, teacher: Teacher) -> Counterexample | None:
    return teacher.completeness(D.plus(), D.minus())


def _audit_equivalence_cex(cex: Counterexample, C: SymbolicDFA, teacher: Teacher):
    if not is_consistent(cex.word, teacher.alphabet):
        raise LearningError("teacher returned an inconsistent counterexample")
    in_target = teacher.membership(cex.word)
    in_c = C.accepts(cex.word)
    if cex.mode is InclusionMode.CANDIDATE_IN_TARGET:
        ok = in_c and not in_target
    else:
        ok = in_target and not in_c
    if not ok:
        raise LearningError(f"counterexample not misclassified as reported ({cex.mode.value})")


def tlsep(teacher: Teacher, options: LearnOptions | None = None) -> LearnResult:
    opts = options or LearnOptions()
    alphabet = teacher.alphabet
    table = ObservationTable(alphabet, teacher)
    trace: list[dict] = []
    sizes: list[int] = []
    strong: list[bool | None] = []
    violations = 0
    regl = getattr(teacher, "regl", None)

    def emit(record: dict):
        record = {**record, "mq": teacher.stats().mq, "iq": teacher.stats().iq, "eq": teacher.stats().eq}
        trace.append(record)
        log.debug("%s", json.dumps(record, ensure_ascii=False))
        if opts.on_record is not None:
            opts.on_record(record)

    for it in range(1, opts.max_iter + 1):
        table.close()
        D = table.to_3dfa()
        sizes.append(D.n_states)
        base = {"iter": it, "S": len(table.S), "E": len(table.E), "hyp": D.n_states}

        cex = check_completeness(D, teacher)
        if cex is not None:
            cv = canonical_value(cex.word, teacher)
            if D.run(cex.word) == cv:
                raise LearningError("completeness counterexample is not misclassified")
            suffix = table.process_completeness_cex(cex.word, D)
            emit({**base, "event": "incomplete", "cex": format_region_word(cex.word, alphabet),
                  "suffix": format_region_word(suffix, alphabet)})
            continue

        if opts.strong_complete_check and regl is not None:
            try:
                strong.append(check_strong_completeness(D, regl))
            except ResourceLimitExceeded as exc:
                log.warning("strong completeness check gave up: %s", exc)
                strong.append(None)

        if opts.extract == "exact":
            C = exact_minimal_consistent_dfa(D, opts.exact_max_states)
            if C is None:
                raise LearningError(f"no separating DFA with <= {opts.exact_max_states} states")
        else:
            analysis = CompatibilityAnalysis.of(D)
            C = extract_candidate(D, analysis.s_good_max, opts.reuse_targets)

        if opts.audit and not is_separating(D, C):
            violations += 1
            log.error("extracted candidate does not separate the hypothesis at iteration %d", it)

        res = teacher.equivalence(C)
        if res is None:
            emit({**base, "event": "equivalent", "candidate": C.n_states})
            dera = symbolic_dfa_to_dera(C, alphabet)
            return LearnResult(C, dera, it, teacher.stats(), sizes, trace, violations, strong,
                               (len(table.S), len(table.E)))
        if opts.audit:
            _audit_equivalence_cex(res, C, teacher)
        before = len(table.S)
        table.add_prefix(res.word)
        emit({**base, "event": "not-equivalent", "candidate": C.n_states, "side": res.mode.value,
              "cex": format_region_word(res.word, alphabet)})
        if len(table.S) == before:
            raise LearningError("equivalence counterexample added no new row")

    dump = json.dumps({"trace": trace, "S": [format_region_word(s, alphabet) for s in table.S],
                       "E": [format_region_word(e, alphabet) for e in table.E]}, ensure_ascii=False, indent=1)
    raise IterationCapExceeded(f"no answer after {opts.max_iter} iterations", dump)
