"""Exact small extremal numbers, the even-cycle bipartite bound, and girth-8 constructions."""

from .bounds import BoundCheck, DensityRow, check_naor_verstraete_bound, density_table, naor_verstraete_bound
from .gq import Field, GQConstruction, gq_incidence_graph
from .record import CSV_HEADER_EX, CSV_HEADER_Z, ExtremalRecord
from .turan import FreeChecker, ex_table, exact_ex, pattern_id
from .zarankiewicz import exact_z

__all__ = [
    "CSV_HEADER_EX",
    "CSV_HEADER_Z",
    "BoundCheck",
    "DensityRow",
    "ExtremalRecord",
    "Field",
    "FreeChecker",
    "GQConstruction",
    "check_naor_verstraete_bound",
    "density_table",
    "ex_table",
    "exact_ex",
    "exact_z",
    "gq_incidence_graph",
    "naor_verstraete_bound",
    "pattern_id",
]
