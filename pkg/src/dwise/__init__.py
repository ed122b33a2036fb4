"""Verification and enumeration engine for maximal non-trivial d-wise
intersecting k-uniform set families."""

from .constructors import FamilyId, applicable_ids, construct, formula_size
from .delta import b_decomposition, cover_and_matching, find_sunflower, kernel_degree, superset_degree
from .iso import are_isomorphic, canonical_form
from .oracle import enumerate_maximal, top_m_maximal
from .rank import expected_ranking, rank_table, thresholds, verify_orderings
from .setcore import (
    ParameterError,
    Params,
    Permutation,
    ResourceCapError,
    SetFamily,
    apply_permutation,
    binomial,
    intersection_closure,
    k_subsets,
    verify_pascal_identity,
)
from .verify import (
    addable_sets,
    is_d_wise_intersecting,
    is_maximal,
    is_t_intersecting,
    is_trivial,
    maximal_closure,
    recheck,
)

__version__ = "0.1.0"

__all__ = [
    "FamilyId",
    "ParameterError",
    "Params",
    "Permutation",
    "ResourceCapError",
    "SetFamily",
    "addable_sets",
    "applicable_ids",
    "apply_permutation",
    "are_isomorphic",
    "b_decomposition",
    "binomial",
    "canonical_form",
    "construct",
    "expected_ranking",
    "cover_and_matching",
    "enumerate_maximal",
    "find_sunflower",
    "formula_size",
    "intersection_closure",
    "is_d_wise_intersecting",
    "is_maximal",
    "is_t_intersecting",
    "is_trivial",
    "k_subsets",
    "kernel_degree",
    "maximal_closure",
    "rank_table",
    "recheck",
    "superset_degree",
    "thresholds",
    "top_m_maximal",
    "verify_orderings",
    "verify_pascal_identity",
]
