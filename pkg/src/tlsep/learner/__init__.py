from .loop import (
    IterationCapExceeded,
    LearnOptions,
    LearnResult,
    LearningError,
    check_completeness,
    tlsep,
)
from .separation import (
    CompatibilityAnalysis,
    check_strong_completeness,
    compute_incompatible_pairs,
    exact_minimal_consistent_dfa,
    extract_candidate,
    is_separating,
    maximal_compatible_sets,
    no_separating_dfa_with,
)
from .table import ObservationTable, canonical_value

__all__ = [
    "CompatibilityAnalysis",
    "IterationCapExceeded",
    "LearnOptions",
    "LearnResult",
    "LearningError",
    "ObservationTable",
    "canonical_value",
    "check_completeness",
    "check_strong_completeness",
    "compute_incompatible_pairs",
    "exact_minimal_consistent_dfa",
    "extract_candidate",
    "is_separating",
    "maximal_compatible_sets",
    "no_separating_dfa_with",
    "tlsep",
]
