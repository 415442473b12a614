"""Deterministic cleaning steps: halving, peeling, regularising, layering.

Subgraphs produced here are relabelled densely; every report carries
``kept``, the original id of each output vertex (output vertex ``i`` is
``kept[i]`` in the input).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from typing import Any

from .graph import BipartiteGraph, Graph, GraphError, iter_bits, mask_of


class ExtractFailed(GraphError):
    def __init__(self, message: str, diagnostics: list[dict[str, Any]]):
        super().__init__(message)
        self.diagnostics = diagnostics


class TreeInfeasible(GraphError):
    """No essentially regular tree at the requested sizes; ``partial`` holds the attempt."""

    def __init__(self, message: str, partial: "RegularTree"):
        super().__init__(message)
        self.partial = partial


@dataclass
class PeelReport:
    input_vertices: int
    input_edges: int
    output_vertices: int
    output_edges: int
    removed: list[int]
    kept: list[int]
    floors: dict[str, float]
    achieved: dict[str, int]
    cut_history: list[int] = field(default_factory=list)

    def to_json(self) -> dict[str, Any]:
        return asdict(self)


def _min_degree(g: Graph, vertices) -> int:
    vs = list(vertices)
    return min((g.degree(v) for v in vs), default=0)


def bipartite_halving(g: Graph) -> tuple[BipartiteGraph, PeelReport]:
    """Bipartite subgraph in which every vertex has degree at least ``d_G / 4``.

    Local switching replaces a random 2-colouring: start from the BFS
    colouring and move any vertex with more neighbours on its own side than
    across; each move grows the cut, so the loop ends with at least half the
    edges crossing. Vertices of degree below ``d_G / 4`` are then peeled.
    """
    if g.num_edges < 1:
        raise GraphError("bipartite_halving needs at least one edge")
    n = g.n
    side = _bfs_sides(g)
    side_mask = [0, 0]
    for v in range(n):
        side_mask[side[v]] |= 1 << v

    def cut_size() -> int:
        return sum(1 for u, v in g.edges() if side[u] != side[v])

    history = [cut_size()]
    moved = True
    while moved:
        moved = False
        for v in range(n):
            own = (g.nbr_mask(v) & side_mask[side[v]]).bit_count()
            other = (g.nbr_mask(v) & side_mask[1 - side[v]]).bit_count()
            if own > other:
                side_mask[side[v]] &= ~(1 << v)
                side[v] = 1 - side[v]
                side_mask[side[v]] |= 1 << v
                history.append(history[-1] + own - other)
                moved = True
    cut_edges = [(u, v) for u, v in g.edges() if side[u] != side[v]]
    cut = Graph(n, cut_edges)
    floor = (2 * g.num_edges / n) / 4
    alive = (1 << n) - 1
    removed = []
    changed = True
    while changed:
        changed = False
        for v in iter_bits(alive):
            if (cut.nbr_mask(v) & alive).bit_count() < floor:
                alive &= ~(1 << v)
                removed.append(v)
                changed = True
    kept = list(iter_bits(alive))
    sub, _ = cut.induced(kept)
    a = frozenset(i for i, v in enumerate(kept) if side[v] == 0)
    b = frozenset(i for i, v in enumerate(kept) if side[v] == 1)
    out = BipartiteGraph(sub, a, b)
    report = PeelReport(
        input_vertices=n,
        input_edges=g.num_edges,
        output_vertices=sub.n,
        output_edges=sub.num_edges,
        removed=removed,
        kept=kept,
        floors={"all": floor},
        achieved={"all": _min_degree(sub, range(sub.n))},
        cut_history=history,
    )
    return out, report


def _bfs_sides(g: Graph) -> list[int]:
    side = [-1] * g.n
    for root in range(g.n):
        if side[root] >= 0:
            continue
        side[root] = 0
        frontier = [root]
        while frontier:
            nxt = []
            for u in frontier:
                for w in iter_bits(g.nbr_mask(u)):
                    if side[w] < 0:
                        side[w] = 1 - side[u]
                        nxt.append(w)
            frontier = nxt
    return side


def two_sided_peel(bg: BipartiteGraph) -> tuple[BipartiteGraph, PeelReport]:
    """Alternately delete A-vertices of degree < d_A/4 and B-vertices of degree < d_B/4.

    ``d_A = e/|A|`` and ``d_B = e/|B|`` are taken from the input and stay
    fixed. Fewer than ``|A| d_A/4 + |B| d_B/4 = e/2`` edges can go, so at
    least half the edges survive.
    """
    g = bg.graph
    e = g.num_edges
    if e < 1:
        raise GraphError("two_sided_peel needs at least one edge")
    floor_a = e / len(bg.part_a) / 4
    floor_b = e / len(bg.part_b) / 4
    alive = (1 << g.n) - 1
    mask_a, mask_b = bg.mask_a, bg.mask_b
    removed = []
    changed = True
    while changed:
        changed = False
        for part, floor in ((mask_a, floor_a), (mask_b, floor_b)):
            for v in iter_bits(alive & part):
                if (g.nbr_mask(v) & alive).bit_count() < floor:
                    alive &= ~(1 << v)
                    removed.append(v)
                    changed = True
    kept = list(iter_bits(alive))
    out, _ = bg.induced(kept)
    report = PeelReport(
        input_vertices=g.n,
        input_edges=e,
        output_vertices=out.graph.n,
        output_edges=out.graph.num_edges,
        removed=removed,
        kept=kept,
        floors={"A": floor_a, "B": floor_b},
        achieved={"A": _min_degree(out.graph, out.part_a), "B": _min_degree(out.graph, out.part_b)},
    )
    return out, report


def _ratio(g: Graph) -> float:
    degs = [d for d in g.degrees()]
    if not degs or min(degs) == 0:
        return math.inf
    return max(degs) / min(degs)


def _regularise(g: Graph, alive: int, target_k: float) -> int:
    """Drop vertices of degree below ``max_degree / target_k`` until the ratio holds."""
    while alive:
        degs = {v: (g.nbr_mask(v) & alive).bit_count() for v in iter_bits(alive)}
        isolated = [v for v, d in degs.items() if d == 0]
        if isolated:
            alive &= ~mask_of(isolated)
            continue
        hi, lo = max(degs.values()), min(degs.values())
        if hi <= target_k * lo:
            return alive
        alive &= ~mask_of(v for v, d in degs.items() if d < hi / target_k)
    return 0


def _balance(bg: BipartiteGraph) -> tuple[BipartiteGraph, list[int]]:
    """Trim lowest-degree vertices of the larger side until sizes are within a factor 2."""
    g = bg.graph
    alive = (1 << g.n) - 1
    while True:
        a = alive & bg.mask_a
        b = alive & bg.mask_b
        # isolated vertices carry no edges and only distort the size ratio
        isolated = [v for v in iter_bits(alive) if not (g.nbr_mask(v) & alive)]
        if isolated:
            alive &= ~mask_of(isolated)
            continue
        na, nb = a.bit_count(), b.bit_count()
        if na == 0 or nb == 0 or (nb <= 2 * na and na <= 2 * nb):
            break
        big = a if na > nb else b
        victim = min(iter_bits(big), key=lambda v: ((g.nbr_mask(v) & alive).bit_count(), v))
        alive &= ~(1 << victim)
    kept = list(iter_bits(alive))
    out, _ = bg.induced(kept)
    return out, kept


def almost_regular_extract(g: Graph, target_k: float = 2.0) -> tuple[BipartiteGraph, float, dict[str, Any]]:
    """Heuristic balanced bipartite subgraph with max/min degree ratio near ``target_k``.

    Vertices are grouped in dyadic degree classes ``floor(log2 deg)``. For
    every contiguous window of classes the induced subgraph is regularised
    by repeated low-degree peeling, halved to a bipartite graph and trimmed
    to balance. The window whose result meets ``target_k`` with the most
    edges wins; if none meets it, the one with the smallest ratio is
    returned and ``report["target_met"]`` is False.
    """
    if target_k < 1:
        raise GraphError("target_k must be at least 1")
    if g.num_edges < 1:
        raise GraphError("almost_regular_extract needs at least one edge")
    degs = g.degrees()
    cls = {v: int(math.log2(d)) for v, d in enumerate(degs) if d > 0}
    classes = sorted(set(cls.values()))
    candidates = []
    diagnostics = []
    for i, lo in enumerate(classes):
        for hi in classes[i:]:
            window = [v for v, c in cls.items() if lo <= c <= hi]
            alive = _regularise(g, mask_of(window), target_k)
            diag = {"window": [lo, hi], "after_regularise": alive.bit_count()}
            diagnostics.append(diag)
            if not alive:
                continue
            sub, kept1 = g.induced(iter_bits(alive))
            if sub.num_edges == 0:
                continue
            halved, rep = bipartite_halving(sub)
            balanced, kept2 = _balance(halved)
            diag["after_balance"] = balanced.graph.n
            if balanced.graph.num_edges == 0 or not balanced.is_balanced():
                continue
            kept = [kept1[rep.kept[v]] for v in kept2]
            achieved = _ratio(balanced.graph)
            candidates.append((achieved <= target_k, balanced.graph.num_edges, -achieved, (lo, hi), balanced, kept))
    if not candidates:
        raise ExtractFailed("no degree window yields a balanced bipartite subgraph", diagnostics)
    met = [c for c in candidates if c[0]]
    if met:
        best = max(met, key=lambda c: (c[1], c[2], [-x for x in c[3]]))
    else:
        best = max(candidates, key=lambda c: (c[2], c[1], [-x for x in c[3]]))
    _, edges, neg_ratio, window, out, kept = best
    report = {
        "window": list(window),
        "target_k": target_k,
        "achieved_k": -neg_ratio,
        "target_met": best[0],
        "kept": kept,
        "output_vertices": out.graph.n,
        "output_edges": edges,
        "windows_tried": diagnostics,
    }
    return out, -neg_ratio, report


@dataclass(frozen=True)
class LayeredDecomposition:
    """Distance layers around a root; ``layers[i]`` is the set at distance ``i``."""

    graph: Graph
    root: int
    layers: tuple[frozenset[int], ...]

    @property
    def depth(self) -> int:
        return len(self.layers) - 1

    def sizes(self) -> list[int]:
        return [len(layer) for layer in self.layers]

    def layer_of(self, v: int) -> int | None:
        for i, layer in enumerate(self.layers):
            if v in layer:
                return i
        return None

    def between(self, i: int) -> BipartiteGraph:
        """Bipartite graph on ``L_i ∪ L_{i+1}`` with the edges between them.

        Vertex ids are the original ids; vertices outside the two layers are
        isolated and put in part A.
        """
        lo, hi = self.layers[i], self.layers[i + 1]
        hi_mask = mask_of(hi)
        edges = [(u, w) for u in lo for w in iter_bits(self.graph.nbr_mask(u) & hi_mask)]
        g = Graph(self.graph.n, edges)
        part_b = frozenset(hi)
        return BipartiteGraph(g, frozenset(range(g.n)) - part_b, part_b)


def bfs_layers(g: Graph, r: int, depth: int) -> LayeredDecomposition:
    g.check_vertex(r)
    layers = [frozenset([r])]
    seen = 1 << r
    frontier = 1 << r
    for _ in range(depth):
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= g.nbr_mask(v)
        nxt &= ~seen
        seen |= nxt
        frontier = nxt
        layers.append(frozenset(iter_bits(nxt)))
    return LayeredDecomposition(g, r, tuple(layers))


@dataclass
class RegularTree:
    root: int
    children: dict[int, frozenset[int]]
    d1: int
    d2: int
    slack: float

    @property
    def level1(self) -> list[int]:
        return list(self.children)

    @property
    def level2(self) -> set[int]:
        out: set[int] = set()
        for c in self.children.values():
            out |= c
        return out

    def parent_of(self) -> dict[int, int]:
        return {w: v for v, cs in self.children.items() for w in cs}

    def edges(self) -> list[tuple[int, int]]:
        out = [(self.root, v) for v in self.children]
        out += [(v, w) for v, cs in self.children.items() for w in sorted(cs)]
        return out

    def validate(self, g: Graph) -> None:
        seen = {self.root}
        for v, cs in self.children.items():
            if v in seen:
                raise GraphError(f"vertex {v} appears twice in the tree")
            seen.add(v)
            for w in cs:
                if w in seen:
                    raise GraphError(f"children sets overlap at {w}")
                seen.add(w)
        for u, v in self.edges():
            if not g.has_edge(u, v):
                raise GraphError(f"tree edge ({u}, {v}) missing from graph")
        # a connected graph with |V| - 1 edges is a tree
        if len(self.edges()) != len(seen) - 1:
            raise GraphError("tree edge count mismatch")

    def to_json(self) -> dict[str, Any]:
        return {
            "root": self.root,
            "children": {str(v): sorted(cs) for v, cs in self.children.items()},
            "d1": self.d1,
            "d2": self.d2,
            "slack": self.slack,
        }


def extract_regular_tree(
    g: Graph,
    r: int,
    d1: int,
    d2: int,
    slack: float = 0.5,
    layers: LayeredDecomposition | None = None,
) -> RegularTree:
    """Depth-two tree: at least ``slack*d1`` root children, each owning ``ceil(slack*d2)`` private L2-children.

    L1 vertices are tried in decreasing order of their L2-degree (ties by
    id); each claims ``ceil(slack*d2)`` not-yet-claimed L2 neighbours or is
    skipped. At most ``d1`` vertices are taken. Raises
    :class:`TreeInfeasible` if fewer than ``ceil(slack*d1)`` succeed.
    """
    if d1 < 1 or d2 < 1:
        raise GraphError("d1 and d2 must be positive")
    if not (0 < slack <= 1):
        raise GraphError("slack must lie in (0, 1]")
    if layers is None or layers.root != r or layers.depth < 2:
        layers = bfs_layers(g, r, 2)
    l1, l2 = layers.layers[1], layers.layers[2]
    l2_mask = mask_of(l2)
    need1 = math.ceil(slack * d1 - 1e-9)
    need2 = math.ceil(slack * d2 - 1e-9)
    order = sorted(l1, key=lambda v: (-(g.nbr_mask(v) & l2_mask).bit_count(), v))
    free = l2_mask
    children: dict[int, frozenset[int]] = {}
    for v in order:
        if len(children) == d1:
            break
        avail = list(iter_bits(g.nbr_mask(v) & free))
        if len(avail) < need2:
            continue
        mine = avail[:need2]
        children[v] = frozenset(mine)
        free &= ~mask_of(mine)
    tree = RegularTree(r, children, d1, d2, slack)
    if len(children) < need1:
        raise TreeInfeasible(f"only {len(children)} of the required {need1} root children could be given {need2} children", tree)
    return tree
