"""Finite ringoids: two operations tied only by distributivity.

The package covers structural predicates, congruence and ideal lattices,
symmetry invariants, and an exhaustive enumerator for additively
idempotent semirings with an absorbing zero, counted up to isomorphism.
"""

from .tables import (
    CayleyTable,
    ElementStats,
    Ringoid,
    RingoidFlags,
    absorbing_element,
    classify,
    element_stats,
    is_associative,
    is_commutative,
    is_distributive,
    is_idempotent,
    is_latin_square,
    neutral_element,
    nfold_sum,
)

__all__ = [
    "CayleyTable",
    "ElementStats",
    "Ringoid",
    "RingoidFlags",
    "absorbing_element",
    "classify",
    "element_stats",
    "is_associative",
    "is_commutative",
    "is_distributive",
    "is_idempotent",
    "is_latin_square",
    "neutral_element",
    "nfold_sum",
]

__version__ = "0.1.0"
