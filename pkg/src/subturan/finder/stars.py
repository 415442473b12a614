"""Stars that are proper at two centres at once, and the bridge dichotomy.

Both routines work inside a :class:`~subturan.colored.ColoredPairGraph`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .._limits import require
from ..colored import (
    ColoredPairGraph,
    PreconditionError,
    ProperAssignment,
    group_blocks,
    default_window,
    elementary_symmetric,
    enumerate_non_red_cliques,
    is_proper,
    proper_star_centers,
    star,
)
from ..families import k_plus
from ..graph import Graph, GraphError, iter_bits, mask_of


@dataclass
class TwoSidedStars:
    count: int
    mode: str
    tuples: list[tuple[int, ...]] | None = None
    blocks: list[frozenset[int]] | None = None
    pool: frozenset[int] = frozenset()


def _first_rep(order: Sequence[int], nbr_mask_of, u: int) -> int:
    m = nbr_mask_of(u)
    for i, b in enumerate(order):
        if (m >> b) & 1:
            return i
    raise AssertionError("pool vertex without a common neighbour")


def two_sided_blocks(C: ColoredPairGraph, x: int, y: int, w: int | None = None) -> list[frozenset[int]]:
    """Partition ``N_b(x, y)`` so that transversals of distinct blocks give proper stars at both centres.

    ``N(x)`` and ``N(y)`` are listed with their common neighbours first.
    Each pool vertex gets its first neighbour in each list; vertices sharing
    either first neighbour are merged, so two blocks never share a bridge
    towards ``x`` or towards ``y``. Merged classes are then grouped into
    blocks of size at least ``w/2`` in order of first appearance.
    """
    if x == y:
        raise PreconditionError("x and y must differ")
    g = C.host.graph
    pool = sorted(iter_bits(C.common_blue_mask([x, y]) & ~(1 << x) & ~(1 << y)))
    if w is None:
        w = default_window(C)
    if not pool:
        return []
    common = sorted(iter_bits(g.nbr_mask(x) & g.nbr_mask(y)))
    list_x = common + sorted(set(iter_bits(g.nbr_mask(x))) - set(common))
    list_y = common + sorted(set(iter_bits(g.nbr_mask(y))) - set(common))
    parent = {u: u for u in pool}

    def find(u: int) -> int:
        while parent[u] != u:
            parent[u] = parent[parent[u]]
            u = parent[u]
        return u

    first_x: dict[int, int] = {}
    first_y: dict[int, int] = {}
    rank = {}
    for u in pool:
        fx = _first_rep(list_x, g.nbr_mask, u)
        fy = _first_rep(list_y, g.nbr_mask, u)
        rank[u] = (min(fx, fy), fx, fy, u)
        for table, f in ((first_x, fx), (first_y, fy)):
            if f in table:
                parent[find(u)] = find(table[f])
            else:
                table[f] = u
    classes: dict[int, list[int]] = {}
    for u in pool:
        classes.setdefault(find(u), []).append(u)
    parts = sorted((frozenset(c) for c in classes.values()), key=lambda c: min(rank[u] for u in c))
    return group_blocks(parts, len(pool), w)


def two_sided_proper_stars(
    C: ColoredPairGraph,
    x: int,
    y: int,
    s: int,
    mode: str = "exact",
    w: int | None = None,
) -> TwoSidedStars:
    """Count ``s``-sets ``U`` in ``N_b(x, y)`` with both ``K^x_U`` and ``K^y_U`` proper.

    ``exact`` enumerates them; ``partition_lower_bound`` counts the
    transversals of :func:`two_sided_blocks`.
    """
    if s < 1:
        raise GraphError("s must be at least 1")
    pool_mask = C.common_blue_mask([x, y]) & ~(1 << x) & ~(1 << y)
    pool = frozenset(iter_bits(pool_mask))
    if mode == "partition_lower_bound":
        blocks = two_sided_blocks(C, x, y, w)
        return TwoSidedStars(elementary_symmetric([len(b) for b in blocks], s), mode, blocks=blocks, pool=pool)
    if mode != "exact":
        raise GraphError(f"unknown mode {mode!r}")
    require("exact_star_pool", len(pool), "|N_b(x, y)|")
    pattern = star(s)
    found = [
        leaves
        for leaves in itertools.combinations(sorted(pool), s)
        if is_proper(C, pattern, (x, *leaves)) and is_proper(C, pattern, (y, *leaves))
    ]
    return TwoSidedStars(len(found), mode, tuples=found, pool=pool)


def two_sided_star_set(C: ColoredPairGraph, x: int, leaves: Sequence[int], pool: Iterable[int] | None = None) -> list[int]:
    """Centres ``y`` in ``pool`` with ``K^y_leaves`` proper, provided ``K^x_leaves`` is proper (else empty)."""
    leaves = list(leaves)
    if C.common_blue_mask([x]) & mask_of(leaves) != mask_of(leaves):
        return []
    if not is_proper(C, star(len(leaves)), (x, *leaves)):
        return []
    cand = set(pool) if pool is not None else set(C.host.part_a)
    cand -= {x, *leaves}
    return proper_star_centers(C, leaves, cand)


@dataclass
class Dichotomy:
    """Outcome of the bridge pigeonhole for one leaf tuple.

    ``anchor`` is ``"x"`` when ``b_star`` is adjacent to ``x``, else the
    1-based index ``k`` of the leaf ``u_k`` it is adjacent to.
    """

    r: int
    ys: list[int]
    assignment: ProperAssignment
    b_used: frozenset[int]
    b_star: int
    covered: list[int]
    anchor: str | int
    cliques: list[tuple[int, ...]]
    truncated: bool

    def __bool__(self) -> bool:
        return True


@dataclass
class Saturated:
    """The greedy copy reached ``t``: ``witness`` is a proper copy of the target."""

    witness: ProperAssignment
    ys: list[int] = field(default_factory=list)

    def __bool__(self) -> bool:
        return False


def dichotomy_extract(
    C: ColoredPairGraph,
    x: int,
    leaves: Sequence[int],
    candidates: Sequence[int],
    t: int,
    clique_cap: int | None = 10_000,
) -> Dichotomy | Saturated:
    """Grow a proper ``K^+`` copy on ``x``, ``leaves`` and chosen ``y``'s, then pigeonhole its bridges.

    The copy has ``x`` joined to ``u_1`` and to every ``y_j``, and every
    ``u_i`` joined to every ``y_j``. Candidates are added in the given
    order while the copy stays proper. If ``t`` of them fit, the copy is
    returned as :class:`Saturated`. Otherwise ``b_star`` is the used
    bridge adjacent to the most unused candidates (ties by id), and the
    non-red ``s``-cliques among those candidates are listed.
    """
    s = len(leaves)
    if s < 1:
        raise GraphError("need at least one leaf")
    if t < 1:
        raise GraphError("t must be at least 1")
    leaves = list(leaves)
    base_copy = {i: u for i, u in enumerate(leaves)}
    base_copy[s] = x
    # with no y's the copy is the single edge x u_1
    current = is_proper(C, Graph(s + 1, [(0, s)]), base_copy)
    if not current:
        raise PreconditionError(f"pair ({x}, {leaves[0]}) has no usable bridge")
    ys: list[int] = []
    for y in candidates:
        if y == x or y in leaves or y in ys:
            continue
        r = len(ys) + 1
        pattern = k_plus(s, r)
        copy = {i: u for i, u in enumerate(leaves)}
        copy.update({s + j: v for j, v in enumerate(ys + [y])})
        copy[s + r] = x
        try:
            attempt = is_proper(C, pattern, copy)
        except PreconditionError:
            continue
        if attempt:
            ys.append(y)
            current = attempt
            if len(ys) == t:
                return Saturated(current, ys)
    g = C.host.graph
    used = frozenset(current.bridge_choice.values())
    rest = mask_of(v for v in candidates if v not in ys and v != x and v not in leaves)
    b_star = max(sorted(used), key=lambda b: ((g.nbr_mask(b) & rest).bit_count(), -b))
    covered_mask = g.nbr_mask(b_star) & rest
    if g.has_edge(b_star, x):
        anchor: str | int = "x"
    else:
        anchor = next(i + 1 for i, u in enumerate(leaves) if g.has_edge(b_star, u))
    cliques: list[tuple[int, ...]] = []
    truncated = False
    if s >= 2:
        cliques, truncated = enumerate_non_red_cliques(C, iter_bits(covered_mask), s, clique_cap)
    else:
        cliques = [(v,) for v in iter_bits(covered_mask)]
    return Dichotomy(len(ys), ys, current, used, b_star, list(iter_bits(covered_mask)), anchor, cliques, truncated)
