"""Exact bounds for densities of geometric-progression-free integer sets.

The pipeline: generate smooth numbers, enumerate geometric triples among
them, solve minimum hitting sets exactly to find where extra exclusions
become necessary, and turn those exclusion tables into rigorous rational
density bounds.  Explicit constructions (interval unions, the greedy
exponent set, exponent-vector searches) supply the matching lower bounds.
"""

from .enclosure import Enclosure, decimal_str
from .exclusions import (
    ExclusionTable,
    cached_direct_table,
    direct_table,
    lift_table,
    load_table,
    merge_tables,
    save_table,
)
from .hitting import (
    BudgetExceeded,
    HittingResult,
    exclusion_profile,
    max_gp_free_subset,
    min_hitting_set,
    min_hitting_set_masks,
)
from .progressions import RatioKind, Triple, TripleSystem, enumerate_triples, is_gp_free
from .smooth import PrimeSet, SmoothSequence, factor_over, generate_smooth, is_prime

__all__ = [
    "BudgetExceeded",
    "Enclosure",
    "ExclusionTable",
    "HittingResult",
    "PrimeSet",
    "RatioKind",
    "SmoothSequence",
    "Triple",
    "TripleSystem",
    "cached_direct_table",
    "decimal_str",
    "direct_table",
    "enumerate_triples",
    "exclusion_profile",
    "factor_over",
    "generate_smooth",
    "is_gp_free",
    "is_prime",
    "lift_table",
    "load_table",
    "max_gp_free_subset",
    "merge_tables",
    "min_hitting_set",
    "min_hitting_set_masks",
    "save_table",
]

__version__ = "0.1.0"
