"""Exhaustive and symmetry-reduced permutation factorization counts in S_n."""

__version__ = "0.1.0"

from .perm import (  # noqa: E402
    CycleType,
    Permutation,
    PermutationError,
    compose,
    conjugate,
    cycle_decomposition,
    cycle_type,
    delete_point,
    fixed_points,
    inverse,
    reflection_length,
)
from .enumeration import (  # noqa: E402
    ClassSpec,
    LevelSetSpec,
    class_size,
    enumerate_class,
    enumerate_level_set,
    narayana,
    stirling_first_kind,
)
from .lemma import (  # noqa: E402
    FQuery,
    TranspositionOrder,
    count_F_brute,
    count_F_recursive,
    default_order,
    in_A,
    verify_lemma1,
    verify_recursion,
)
from .products import (  # noqa: E402
    DiagCoefficient,
    GQuery,
    conditions_123,
    count_G,
    diag_coefficient,
    verify_covering,
    verify_lemma2,
)

__all__ = [
    "ClassSpec",
    "CycleType",
    "DiagCoefficient",
    "FQuery",
    "GQuery",
    "LevelSetSpec",
    "Permutation",
    "PermutationError",
    "TranspositionOrder",
    "class_size",
    "compose",
    "conditions_123",
    "conjugate",
    "count_F_brute",
    "count_F_recursive",
    "count_G",
    "cycle_decomposition",
    "cycle_type",
    "default_order",
    "delete_point",
    "diag_coefficient",
    "enumerate_class",
    "enumerate_level_set",
    "fixed_points",
    "in_A",
    "inverse",
    "narayana",
    "reflection_length",
    "stirling_first_kind",
    "verify_covering",
    "verify_lemma1",
    "verify_lemma2",
    "verify_recursion",
]
