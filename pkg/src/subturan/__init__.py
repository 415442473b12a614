"""Turán-type problems for 1-subdivisions: constructions, certified search, exact small values."""

from ._limits import ResourceLimitError
from .canon import are_isomorphic, automorphism_orbits, canonical_form, canonical_labeling
from .families import (
    FamilySpec,
    SubdivisionLabels,
    complete_bipartite,
    complete_graph,
    complete_multipartite,
    cone_over_cycle,
    cycle,
    enumerate_family_F,
    family_member,
    k_h_t,
    k_plus,
    path,
    subdivide,
)
from .graph import (
    BipartiteGraph,
    Embedding,
    Graph,
    GraphError,
    NotBipartite,
    bipartition_of,
    common_neighborhood,
    girth,
    is_bipartite,
)
from .graphio import from_graph6, read_graph, to_graph6, write_graph

__version__ = "0.1.0"

__all__ = [
    "BipartiteGraph",
    "Embedding",
    "FamilySpec",
    "Graph",
    "GraphError",
    "NotBipartite",
    "ResourceLimitError",
    "SubdivisionLabels",
    "are_isomorphic",
    "automorphism_orbits",
    "bipartition_of",
    "canonical_form",
    "canonical_labeling",
    "common_neighborhood",
    "complete_bipartite",
    "complete_graph",
    "complete_multipartite",
    "cone_over_cycle",
    "cycle",
    "enumerate_family_F",
    "family_member",
    "from_graph6",
    "girth",
    "is_bipartite",
    "k_h_t",
    "k_plus",
    "path",
    "read_graph",
    "subdivide",
    "to_graph6",
    "write_graph",
]
