"""Certified subgraph and subdivision search, the layered cone strategy, and star tools."""

from .pipeline import LiftFailed, PipelineConfig, PipelineTrace, lift_cycle_to_cone, pipeline_cone_cycle
from .search import (
    DEFAULT_BUDGET,
    BudgetExceeded,
    Matcher,
    SubdivisionWitness,
    contains,
    find_subdivision,
    find_subgraph,
    iter_subgraphs,
    search_order,
)
from .stars import Dichotomy, Saturated, TwoSidedStars, dichotomy_extract, two_sided_blocks, two_sided_proper_stars, two_sided_star_set

__all__ = [
    "DEFAULT_BUDGET",
    "BudgetExceeded",
    "Dichotomy",
    "LiftFailed",
    "Matcher",
    "PipelineConfig",
    "PipelineTrace",
    "Saturated",
    "SubdivisionWitness",
    "TwoSidedStars",
    "contains",
    "dichotomy_extract",
    "find_subdivision",
    "find_subgraph",
    "iter_subgraphs",
    "lift_cycle_to_cone",
    "pipeline_cone_cycle",
    "search_order",
    "two_sided_blocks",
    "two_sided_proper_stars",
    "two_sided_star_set",
]
