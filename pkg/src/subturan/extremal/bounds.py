"""Closed-form bounds and density tables."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable

from ..graph import Graph, GraphError


@dataclass(frozen=True)
class BoundCheck:
    holds: bool
    bound: float
    slack: float


def naor_verstraete_bound(m: int, n: int, k: int) -> float:
    """Upper bound on edges of an ``m`` by ``n`` bipartite graph without ``C_{2k}``, ``m <= n``."""
    if k < 2:
        raise GraphError("k must be at least 2")
    if not (1 <= m <= n):
        raise GraphError("need 1 <= m <= n")
    if k % 2:
        main = (m * n) ** ((k + 1) / (2 * k))
    else:
        main = m ** ((k + 2) / (2 * k)) * n**0.5
    return (2 * k - 3) * (main + m + n)


def check_naor_verstraete_bound(m: int, n: int, k: int, computed_z: int) -> BoundCheck:
    bound = naor_verstraete_bound(m, n, k)
    return BoundCheck(computed_z <= bound, bound, bound - computed_z)


@dataclass(frozen=True)
class DensityRow:
    n: int
    e: int
    ratio: float


def density_table(graphs: Iterable[Graph], exponent: Fraction | float = Fraction(4, 3)) -> list[DensityRow]:
    """``(n, e, e / n^exponent)`` per graph, sorted by ``n`` (then ``e``)."""
    x = float(exponent)
    rows = [DensityRow(g.n, g.num_edges, g.num_edges / g.n**x if g.n else 0.0) for g in graphs]
    return sorted(rows, key=lambda r: (r.n, r.e))
