"""Simple undirected graphs backed by integer bitsets.

Vertices are the dense ids ``0..n-1``. Each vertex's neighbourhood is held
as a Python ``int`` used as a bitset, so set intersection over many
vertices is a chain of ``&`` operations.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence


class GraphError(ValueError):
    """Invalid vertex ids, malformed edges, or violated graph invariants."""


class NotBipartite(GraphError):
    """Raised by :func:`bipartition_of`; ``cycle`` is an odd cycle."""

    def __init__(self, cycle: list[int]):
        super().__init__(f"graph contains an odd cycle of length {len(cycle)}")
        self.cycle = cycle


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


class Graph:
    """Immutable simple graph on vertices ``0..n-1``."""

    __slots__ = ("n", "_adj", "_m")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise GraphError("vertex count must be non-negative")
        adj = [0] * n
        m = 0
        for e in edges:
            u, v = e
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge ({u}, {v}) out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at {u}")
            if not (adj[u] >> v) & 1:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
                m += 1
        self.n = n
        self._adj = tuple(adj)
        self._m = m

    @classmethod
    def from_masks(cls, masks: Sequence[int]) -> "Graph":
        g = cls.__new__(cls)
        n = len(masks)
        full = (1 << n) - 1
        for v, mv in enumerate(masks):
            if mv & ~full or (mv >> v) & 1:
                raise GraphError(f"bad adjacency mask at vertex {v}")
            for w in iter_bits(mv):
                if not (masks[w] >> v) & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {w}")
        g.n = n
        g._adj = tuple(masks)
        g._m = sum(mv.bit_count() for mv in masks) // 2
        return g

    # -- queries -------------------------------------------------------
    @property
    def num_edges(self) -> int:
        return self._m

    def nbr_mask(self, v: int) -> int:
        return self._adj[v]

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self._adj[v]))

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def degrees(self) -> list[int]:
        return [a.bit_count() for a in self._adj]

    def has_edge(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and 0 <= v < self.n and bool((self._adj[u] >> v) & 1)

    def edges(self) -> list[tuple[int, int]]:
        """Edges as ``(u, v)`` with ``u < v``, lexicographically sorted."""
        out = []
        for u in range(self.n):
            for v in iter_bits(self._adj[u] >> (u + 1)):
                out.append((u, u + 1 + v))
        return out

    def check_vertex(self, v: int) -> None:
        if not (isinstance(v, int) and 0 <= v < self.n):
            raise GraphError(f"invalid vertex {v!r} for graph on {self.n} vertices")

    # -- constructions ---------------------------------------------------
    def induced(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph relabelled densely; returns it with new->old ids."""
        keep = sorted(set(vertices))
        for v in keep:
            self.check_vertex(v)
        index = {v: i for i, v in enumerate(keep)}
        sel = mask_of(keep)
        masks = []
        for v in keep:
            masks.append(mask_of(index[w] for w in iter_bits(self._adj[v] & sel)))
        return Graph.from_masks(masks), keep

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Graph with vertex ``v`` renamed ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise GraphError("relabel needs a permutation of 0..n-1")
        return Graph(self.n, ((perm[u], perm[v]) for u, v in self.edges()))

    def add_edges(self, edges: Iterable[Sequence[int]]) -> "Graph":
        return Graph(self.n, list(self.edges()) + [tuple(e) for e in edges])

    def add_vertex(self, neighbors: Iterable[int] = ()) -> "Graph":
        v = self.n
        return Graph(v + 1, list(self.edges()) + [(u, v) for u in neighbors])

    def disjoint_union(self, other: "Graph") -> "Graph":
        off = self.n
        edges = self.edges() + [(u + off, v + off) for u, v in other.edges()]
        return Graph(self.n + other.n, edges)

    # -- dunder ----------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self._m})"


@dataclass(frozen=True)
class BipartiteGraph:
    """A graph together with a certified bipartition ``(part_a, part_b)``."""

    graph: Graph
    part_a: frozenset[int]
    part_b: frozenset[int]

    def __post_init__(self) -> None:
        a, b = frozenset(self.part_a), frozenset(self.part_b)
        object.__setattr__(self, "part_a", a)
        object.__setattr__(self, "part_b", b)
        if a & b:
            raise GraphError("parts overlap")
        if a | b != frozenset(range(self.graph.n)):
            raise GraphError("parts do not cover the vertex set")
        mask_a = mask_of(a)
        for v in a:
            if self.graph.nbr_mask(v) & mask_a:
                raise GraphError(f"edge inside part A at vertex {v}")
        mask_b = mask_of(b)
        for v in b:
            if self.graph.nbr_mask(v) & mask_b:
                raise GraphError(f"edge inside part B at vertex {v}")

    @property
    def mask_a(self) -> int:
        return mask_of(self.part_a)

    @property
    def mask_b(self) -> int:
        return mask_of(self.part_b)

    def is_balanced(self) -> bool:
        na, nb = len(self.part_a), len(self.part_b)
        if na == 0 or nb == 0:
            return False
        return 0.5 <= na / nb <= 2

    def swapped(self) -> "BipartiteGraph":
        return BipartiteGraph(self.graph, self.part_b, self.part_a)

    def induced(self, vertices: Iterable[int]) -> tuple["BipartiteGraph", list[int]]:
        sub, keep = self.graph.induced(vertices)
        a = [i for i, v in enumerate(keep) if v in self.part_a]
        b = [i for i, v in enumerate(keep) if v in self.part_b]
        return BipartiteGraph(sub, frozenset(a), frozenset(b)), keep


@dataclass(frozen=True)
class Embedding:
    """Injective edge-preserving map ``pattern -> host``."""

    pattern: Graph
    host: Graph
    mapping: tuple[int, ...]

    def validate(self) -> None:
        from .certify import check_embedding

        check_embedding(self.pattern, self.host, dict(enumerate(self.mapping)))

    def image(self) -> list[int]:
        return list(self.mapping)


def common_neighborhood(g: Graph, vertices: Iterable[int]) -> set[int]:
    """Vertices adjacent to every vertex of ``vertices``."""
    vs = list(vertices)
    if not vs:
        raise GraphError("common neighbourhood of an empty set is undefined")
    acc = -1
    for v in vs:
        g.check_vertex(v)
        acc &= g.nbr_mask(v)
    return set(iter_bits(acc))


def common_mask(g: Graph, vertices: Iterable[int]) -> int:
    acc = -1
    for v in vertices:
        acc &= g.nbr_mask(v)
    return acc if acc != -1 else 0


def girth(g: Graph) -> float:
    """Length of a shortest cycle, ``math.inf`` for forests."""
    best = math.inf
    n = g.n
    for root in range(n):
        dist = [-1] * n
        parent = [-1] * n
        dist[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            if 2 * dist[u] >= best:
                break
            for w in iter_bits(g.nbr_mask(u)):
                if dist[w] < 0:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif w != parent[u]:
                    best = min(best, dist[u] + dist[w] + 1)
    return best


def connected_components(g: Graph) -> list[list[int]]:
    seen = 0
    comps = []
    for s in range(g.n):
        if (seen >> s) & 1:
            continue
        comp = 0
        frontier = 1 << s
        while frontier:
            comp |= frontier
            nxt = 0
            for v in iter_bits(frontier):
                nxt |= g.nbr_mask(v)
            frontier = nxt & ~comp
        seen |= comp
        comps.append(list(iter_bits(comp)))
    return comps


def bipartition_of(g: Graph) -> BipartiteGraph:
    """Two-colour ``g`` by BFS, or raise :class:`NotBipartite` with an odd cycle.

    Isolated vertices and each component's BFS root go to part A.
    """
    side = [-1] * g.n
    parent = [-1] * g.n
    for root in range(g.n):
        if side[root] >= 0:
            continue
        side[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in iter_bits(g.nbr_mask(u)):
                if side[w] < 0:
                    side[w] = 1 - side[u]
                    parent[w] = u
                    queue.append(w)
                elif side[w] == side[u]:
                    raise NotBipartite(_odd_cycle(parent, u, w))
    a = frozenset(v for v in range(g.n) if side[v] == 0)
    b = frozenset(v for v in range(g.n) if side[v] == 1)
    return BipartiteGraph(g, a, b)


def _odd_cycle(parent: list[int], u: int, w: int) -> list[int]:
    def path_to_root(v: int) -> list[int]:
        out = [v]
        while parent[out[-1]] >= 0:
            out.append(parent[out[-1]])
        return out

    pu, pw = path_to_root(u), path_to_root(w)
    on_pw = {v: i for i, v in enumerate(pw)}
    for i, v in enumerate(pu):
        if v in on_pw:
            return pu[: i + 1] + pw[: on_pw[v]][::-1]
    raise AssertionError("BFS tree paths must meet")


def is_bipartite(g: Graph) -> bool:
    try:
        bipartition_of(g)
    except NotBipartite:
        return False
    return True


def bipartite_from_parts(g: Graph, part_a: Iterable[int], part_b: Iterable[int] | None = None) -> BipartiteGraph:
    a = frozenset(part_a)
    b = frozenset(part_b) if part_b is not None else frozenset(range(g.n)) - a
    return BipartiteGraph(g, a, b)


def permuted(g: Graph, perm: Mapping[int, int] | Sequence[int]) -> Graph:
    if isinstance(perm, Mapping):
        perm = [perm[v] for v in range(g.n)]
    return g.relabel(perm)
