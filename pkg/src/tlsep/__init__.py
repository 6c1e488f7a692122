"""Greybox learning of deterministic event-recording automata from region-word queries."""

from .automata import DERA, SymbolicDFA, ThreeDFA, Tri, dera_to_symbolic_dfa, symbolic_dfa_to_dera
from .consistency import check_consistency, is_consistent, witness_timed_word
from .io import emit_dera, load_dera, parse_dera
from .learner import LearnOptions, LearnResult, tlsep
from .regions import build_regl_automaton, regl_membership
from .teacher import DeraTeacher, InclusionMode, QueryStats
from .timed import Alphabet, Guard, parse_guard, parse_region_word, region_word_of

__version__ = "0.1.0"

__all__ = [
    "Alphabet",
    "DERA",
    "DeraTeacher",
    "Guard",
    "InclusionMode",
    "LearnOptions",
    "LearnResult",
    "QueryStats",
    "SymbolicDFA",
    "ThreeDFA",
    "Tri",
    "build_regl_automaton",
    "check_consistency",
    "dera_to_symbolic_dfa",
    "emit_dera",
    "is_consistent",
    "load_dera",
    "parse_dera",
    "parse_guard",
    "parse_region_word",
    "region_word_of",
    "regl_membership",
    "symbolic_dfa_to_dera",
    "tlsep",
    "witness_timed_word",
]
