"""Red/blue pair colouring of one side of a bipartite host, and proper copies.

For a host with parts ``A`` and ``B`` and a threshold ``e`` (the edge count
of a pattern), an ``A``-pair is red when it has at least ``e`` common
neighbours, blue when it has between 1 and ``e - 1``, and uncoloured when
it has none. A copy of a pattern inside ``A`` is proper when its edges can
be given pairwise distinct common neighbours, i.e. when the 1-subdivision
of the pattern embeds with the copy as branch vertices.
"""

from __future__ import annotations

import enum
import itertools
import json
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Iterable, Mapping, Sequence

from ._limits import require
from .certify import check_subdivision
from .families import k_h_t
from .graph import BipartiteGraph, Graph, GraphError, iter_bits, mask_of


class PreconditionError(GraphError):
    """Input violates an operation's stated precondition (not a negative answer)."""


class Color(enum.Enum):
    UNCOLORED = 0
    BLUE = 1
    RED = 2


def _pair(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


class ColoredPairGraph:
    """Pair colouring of ``host.part_a`` relative to ``threshold`` common neighbours."""

    def __init__(self, host: BipartiteGraph, threshold: int):
        if threshold < 1:
            raise GraphError("threshold must be at least 1")
        self.host = host
        self.threshold = threshold
        g = host.graph
        counts: Counter[tuple[int, int]] = Counter()
        for u in sorted(host.part_a):
            for b in iter_bits(g.nbr_mask(u)):
                for v in iter_bits(g.nbr_mask(b) >> (u + 1)):
                    counts[(u, u + 1 + v)] += 1
        self._counts = dict(counts)
        self._blue = {v: 0 for v in host.part_a}
        self._red = {v: 0 for v in host.part_a}
        for (u, v), c in self._counts.items():
            table = self._red if c >= threshold else self._blue
            table[u] |= 1 << v
            table[v] |= 1 << u

    @property
    def pattern_edge_count(self) -> int:
        return self.threshold

    def _check_a(self, v: int) -> None:
        if v not in self.host.part_a:
            raise PreconditionError(f"vertex {v} is not in part A")

    def count(self, u: int, v: int) -> int:
        self._check_a(u)
        self._check_a(v)
        if u == v:
            raise PreconditionError("a pair needs two distinct vertices")
        return self._counts.get(_pair(u, v), 0)

    def color(self, u: int, v: int) -> Color:
        c = self.count(u, v)
        if c == 0:
            return Color.UNCOLORED
        return Color.RED if c >= self.threshold else Color.BLUE

    def common_mask(self, u: int, v: int) -> int:
        g = self.host.graph
        return g.nbr_mask(u) & g.nbr_mask(v) & self.host.mask_b

    def common(self, u: int, v: int) -> frozenset[int]:
        return frozenset(iter_bits(self.common_mask(u, v)))

    def blue_mask(self, v: int) -> int:
        self._check_a(v)
        return self._blue[v]

    def red_mask(self, v: int) -> int:
        self._check_a(v)
        return self._red[v]

    def blue_neighbors(self, v: int) -> frozenset[int]:
        return frozenset(iter_bits(self.blue_mask(v)))

    def common_blue_mask(self, vertices: Iterable[int]) -> int:
        vs = list(vertices)
        if not vs:
            raise PreconditionError("need at least one vertex")
        out = self.blue_mask(vs[0])
        for v in vs[1:]:
            out &= self.blue_mask(v)
        return out

    def common_blue(self, vertices: Iterable[int]) -> frozenset[int]:
        return frozenset(iter_bits(self.common_blue_mask(vertices)))

    def pairs(self, color: Color) -> list[tuple[int, int]]:
        """Sorted A-pairs of the given colour."""
        if color is Color.UNCOLORED:
            a = sorted(self.host.part_a)
            return [p for p in itertools.combinations(a, 2) if p not in self._counts]
        red = color is Color.RED
        return sorted(p for p, c in self._counts.items() if (c >= self.threshold) == red)

    def nonzero_counts(self) -> dict[tuple[int, int], int]:
        return dict(self._counts)


def build_colored(host: BipartiteGraph, pattern: Graph | int) -> ColoredPairGraph:
    """Colour ``A``-pairs relative to ``e(pattern)`` (or an explicit threshold)."""
    threshold = pattern if isinstance(pattern, int) else pattern.num_edges
    return ColoredPairGraph(host, threshold)


# -- proper copies ---------------------------------------------------------


@dataclass(frozen=True)
class ProperAssignment:
    """A copy of a pattern in ``A`` with a distinct bridge in ``B`` for each pattern edge."""

    pattern: Graph
    colored_copy: dict[int, int]
    bridge_choice: dict[tuple[int, int], int]

    def __bool__(self) -> bool:
        return True

    def validate(self, host: Graph) -> None:
        """Raise :class:`~subturan.certify.InvalidWitness` unless this embeds the 1-subdivision."""
        check_subdivision(self.pattern, host, self.colored_copy, self.bridge_choice)

    def to_json(self) -> dict[str, Any]:
        return {
            "pattern": {"n": self.pattern.n, "edges": [list(e) for e in self.pattern.edges()]},
            "copy": {str(v): a for v, a in sorted(self.colored_copy.items())},
            "bridges": {json.dumps(list(e)).replace(" ", ""): b for e, b in sorted(self.bridge_choice.items())},
        }

    @classmethod
    def from_json(cls, obj: Mapping[str, Any]) -> "ProperAssignment":
        try:
            p = obj["pattern"]
            pattern = Graph(int(p["n"]), [tuple(e) for e in p["edges"]])
            copy = {int(k): int(v) for k, v in obj["copy"].items()}
            bridges = {}
            for key, b in obj["bridges"].items():
                u, v = json.loads(key)
                bridges[_pair(int(u), int(v))] = int(b)
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphError(f"malformed assignment JSON: {exc}") from exc
        return cls(pattern, copy, bridges)


@dataclass(frozen=True)
class Improper:
    """Hall violation: ``edges`` jointly see only ``neighborhood`` (fewer vertices than edges)."""

    edges: tuple[tuple[int, int], ...]
    neighborhood: frozenset[int]

    def __bool__(self) -> bool:
        return False


def _normalise_copy(pattern: Graph, copy: Mapping[int, int] | Sequence[int]) -> dict[int, int]:
    if isinstance(copy, Mapping):
        out = {int(k): int(v) for k, v in copy.items()}
    else:
        out = {i: int(v) for i, v in enumerate(copy)}
    if set(out) != set(range(pattern.n)):
        raise PreconditionError("copy must map every pattern vertex")
    if len(set(out.values())) != len(out):
        raise PreconditionError("copy is not injective")
    return out


def is_proper(C: ColoredPairGraph, pattern: Graph, copy: Mapping[int, int] | Sequence[int]) -> ProperAssignment | Improper:
    """Decide whether ``copy`` admits pairwise distinct bridges, by bipartite matching.

    Pattern edges are matched to ``B`` with augmenting paths, edges with the
    smallest common neighbourhood first. On failure the alternating-path
    closure of an unmatched edge is returned as a Hall-violating set.
    """
    mapping = _normalise_copy(pattern, copy)
    for v in mapping.values():
        C._check_a(v)
    edges = pattern.edges()
    options = {}
    for e in edges:
        u, v = mapping[e[0]], mapping[e[1]]
        m = C.common_mask(u, v)
        if not m:
            raise PreconditionError(f"pattern edge {e} maps to an uncoloured pair ({u}, {v})")
        options[e] = list(iter_bits(m))
    order = sorted(edges, key=lambda e: (len(options[e]), e))
    owner: dict[int, tuple[int, int]] = {}

    def augment(e, seen: set[int]) -> bool:
        for b in options[e]:
            if b in seen:
                continue
            seen.add(b)
            if b not in owner or augment(owner[b], seen):
                owner[b] = e
                return True
        return False

    for e in order:
        if not augment(e, set()):
            return _hall_violator(e, options, owner)
    bridges = {e: b for b, e in owner.items()}
    return ProperAssignment(pattern, mapping, bridges)


def _hall_violator(start, options, owner) -> Improper:
    edge_set = {start}
    nbhd: set[int] = set()
    frontier = [start]
    while frontier:
        nxt = []
        for e in frontier:
            for b in options[e]:
                if b not in nbhd:
                    nbhd.add(b)
                    # every reachable bridge is matched, otherwise an augmenting path would exist
                    f = owner[b]
                    if f not in edge_set:
                        edge_set.add(f)
                        nxt.append(f)
        frontier = nxt
    return Improper(tuple(sorted(edge_set)), frozenset(nbhd))


# -- blue statistics -------------------------------------------------------


@dataclass(frozen=True)
class BlueStats:
    blue_edges: int
    max_blue_vertex: int | None
    max_blue_degree: int
    degrees: dict[int, int]
    delta_ratio: float
    """``min A-degree * |A| / |B|``, the density quantity the blue-edge count is compared with."""


def blue_stats(C: ColoredPairGraph) -> BlueStats:
    degrees = {v: C.blue_mask(v).bit_count() for v in sorted(C.host.part_a)}
    total = sum(degrees.values()) // 2
    best = max(degrees, key=lambda v: (degrees[v], -v), default=None)
    g = C.host.graph
    delta = min((g.degree(v) for v in C.host.part_a), default=0)
    ratio = delta * len(C.host.part_a) / len(C.host.part_b) if C.host.part_b else 0.0
    return BlueStats(total, best, degrees[best] if best is not None else 0, degrees, ratio)


# -- proper stars ----------------------------------------------------------


def star(s: int) -> Graph:
    """``K_{1,s}`` with centre 0 and leaves ``1..s``."""
    return Graph(s + 1, [(0, i) for i in range(1, s + 1)])


def default_window(C: ColoredPairGraph) -> int:
    g = C.host.graph
    return max(1, min((g.degree(b) for b in C.host.part_b), default=1))


def _check_blue_subset(C: ColoredPairGraph, y: int, Y: Iterable[int]) -> list[int]:
    Y = sorted(set(Y))
    extra = mask_of(Y) & ~C.blue_mask(y)
    if extra:
        raise PreconditionError(f"vertices {sorted(iter_bits(extra))} are not blue neighbours of {y}")
    return Y


def group_blocks(parts: Sequence[frozenset[int]], total: int, w: int) -> list[frozenset[int]]:
    """Join consecutive disjoint parts into blocks of size at least ``w/2``.

    Once what is left has size at most ``w/2`` it is merged into the last block.
    """
    blocks: list[frozenset[int]] = []
    cur: set[int] = set()
    left = total
    for i, part in enumerate(parts):
        if blocks and not cur and left * 2 <= w:
            blocks[-1] = blocks[-1].union(*parts[i:])
            return blocks
        cur |= part
        left -= len(part)
        if 2 * len(cur) >= w:
            blocks.append(frozenset(cur))
            cur = set()
    if cur:
        if blocks and 2 * len(cur) <= w:
            blocks[-1] = blocks[-1] | frozenset(cur)
        else:
            blocks.append(frozenset(cur))
    return blocks


def proper_star_partition(C: ColoredPairGraph, y: int, Y: Iterable[int], w: int | None = None) -> list[frozenset[int]]:
    """Partition ``Y`` so that any transversal of distinct blocks spans a proper star at ``y``.

    ``N(y) = {b_1 < ... < b_k}``; ``W_i`` is the part of ``Y`` adjacent to
    ``b_i`` and to no earlier ``b_j``. Each vertex of ``W_i`` can use
    ``b_i`` as its bridge, and distinct blocks never share a ``W_i``.
    """
    Y = _check_blue_subset(C, y, Y)
    if w is None:
        w = default_window(C)
    if w < 1:
        raise GraphError("window must be positive")
    g = C.host.graph
    remaining = mask_of(Y)
    parts = []
    for b in iter_bits(g.nbr_mask(y)):
        wi = g.nbr_mask(b) & remaining
        if wi:
            parts.append(frozenset(iter_bits(wi)))
            remaining &= ~wi
    # every blue neighbour shares some b with y
    assert not remaining
    return group_blocks(parts, len(Y), w)


def elementary_symmetric(values: Sequence[int], s: int) -> int:
    """Sum over ``s``-subsets of the product of their members."""
    e = [1] + [0] * s
    for x in values:
        for j in range(s, 0, -1):
            e[j] += e[j - 1] * x
    return e[s]


def count_proper_blue_stars(
    C: ColoredPairGraph,
    y: int,
    Y: Iterable[int],
    s: int,
    mode: str = "exact",
    w: int | None = None,
) -> int:
    """Proper ``s``-stars centred at ``y`` with leaves in ``Y``.

    ``exact`` tests every ``s``-subset; ``partition_lower_bound`` counts only
    the transversals of :func:`proper_star_partition`.
    """
    if s < 1:
        raise GraphError("s must be at least 1")
    Y = _check_blue_subset(C, y, Y)
    if mode == "partition_lower_bound":
        blocks = proper_star_partition(C, y, Y, w)
        return elementary_symmetric([len(b) for b in blocks], s)
    if mode != "exact":
        raise GraphError(f"unknown mode {mode!r}")
    require("exact_star_pool", len(Y), "|Y|")
    pattern = star(s)
    return sum(1 for leaves in itertools.combinations(Y, s) if is_proper(C, pattern, (y, *leaves)))


def proper_star_centers(C: ColoredPairGraph, leaves: Sequence[int], candidates: Iterable[int] | None = None) -> list[int]:
    """Vertices ``y`` for which ``leaves`` are blue neighbours forming a proper star at ``y``."""
    pattern = star(len(leaves))
    pool = C.common_blue_mask(leaves)
    if candidates is not None:
        pool &= mask_of(candidates)
    return [y for y in iter_bits(pool) if is_proper(C, pattern, (y, *leaves))]


# -- non-red cliques -------------------------------------------------------


def enumerate_non_red_cliques(
    C: ColoredPairGraph,
    pool: Iterable[int],
    s: int,
    cap: int | None = None,
) -> tuple[list[tuple[int, ...]], bool]:
    """``s``-subsets of ``pool`` with no red pair, in lexicographic order.

    Returns ``(cliques, truncated)``; ``truncated`` is True when ``cap``
    cliques were found before the enumeration finished.
    """
    if s < 2:
        raise GraphError("s must be at least 2")
    vs = sorted(set(pool))
    for v in vs:
        C._check_a(v)
    pool_mask = mask_of(vs)
    ok = {v: pool_mask & ~C.red_mask(v) & ~(1 << v) for v in vs}
    out: list[tuple[int, ...]] = []
    limit = None if cap is None else cap + 1

    def extend(clique: list[int], cand: int) -> bool:
        if len(clique) == s:
            out.append(tuple(clique))
            return limit is not None and len(out) >= limit
        for v in iter_bits(cand):
            clique.append(v)
            stop = extend(clique, cand & ok[v] & ~((2 << v) - 1))
            clique.pop()
            if stop:
                return True
        return False

    extend([], pool_mask)
    truncated = limit is not None and len(out) >= limit
    return (out[:cap] if truncated else out), truncated


# -- greedy extension to K_{H,t} -------------------------------------------


@dataclass(frozen=True)
class Stuck:
    """No further admissible vertex; ``placed`` lists the vertices added before stopping."""

    placed: tuple[int, ...]
    partial: ProperAssignment | None = field(default=None, compare=False)

    def __bool__(self) -> bool:
        return False


def greedy_extend(C: ColoredPairGraph, pattern: Graph, copy: Mapping[int, int] | Sequence[int], t: int) -> ProperAssignment | Stuck:
    """Add ``t`` common blue neighbours of the copy to obtain a proper ``K_{H,t}``.

    ``C`` must be coloured relative to ``e(K_{H,t})``. Every bridge already
    used and every common neighbourhood of two copy vertices is forbidden; a
    candidate whose neighbourhood avoids the forbidden set can take any
    common neighbour with each copy vertex as bridge, and those bridges
    become forbidden in turn. Candidates are tried by ascending degree.
    """
    if t < 0:
        raise GraphError("t must be non-negative")
    h = pattern
    target = k_h_t(h, t)
    if C.threshold != target.num_edges:
        raise PreconditionError(f"colouring threshold {C.threshold} differs from e(K_(H,t)) = {target.num_edges}")
    base = is_proper(C, h, copy)
    if not base:
        raise PreconditionError("the given copy is not proper")
    mapping = base.colored_copy
    V = [mapping[v] for v in range(h.n)]
    for u, v in itertools.combinations(V, 2):
        if C.color(u, v) is Color.RED:
            raise PreconditionError(f"copy pair ({u}, {v}) is red")
    g = C.host.graph
    forbidden = mask_of(base.bridge_choice.values())
    for u, v in itertools.combinations(V, 2):
        forbidden |= C.common_mask(u, v)
    pool = C.common_blue_mask(V) & ~mask_of(V) if V else C.host.mask_a
    candidates = sorted(iter_bits(pool), key=lambda z: (g.degree(z), z))
    bridges = dict(base.bridge_choice)
    placed: list[int] = []
    for z in candidates:
        if len(placed) == t:
            break
        if g.nbr_mask(z) & forbidden:
            continue
        new = {}
        for i, yv in enumerate(V):
            # N(z) misses every N(y_i, y_j), so these sets are pairwise disjoint
            new[(i, h.n + len(placed))] = min(iter_bits(C.common_mask(z, yv)))
        placed.append(z)
        bridges.update(new)
        forbidden |= mask_of(new.values())
    if len(placed) < t:
        n_done = h.n + len(placed)
        part = Graph(n_done, [e for e in target.edges() if e[1] < n_done])
        part_copy = {**mapping, **{h.n + j: z for j, z in enumerate(placed)}}
        return Stuck(tuple(placed), ProperAssignment(part, part_copy, {e: b for e, b in bridges.items()}))
    full_copy = {**mapping, **{h.n + j: z for j, z in enumerate(placed)}}
    result = ProperAssignment(target, full_copy, bridges)
    result.validate(g)
    if not is_proper(C, target, full_copy):
        raise AssertionError("greedy extension produced a copy the matching rejects")
    return result
