"""Layered strategy for embedding the subdivided cone over a cycle.

From a root ``r`` the graph is split into distance layers. A ``2k``-cycle
alternating between two consecutive layers, with its ``k`` vertices in
``L_2`` as branch vertices, becomes the subdivided cone once each of those
vertices is joined back to ``r`` through its own ``L_1`` vertex.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field
from typing import Any, Mapping, Sequence

from ..families import cone_over_cycle, cycle
from ..graph import Graph, GraphError, mask_of
from ..reduction import LayeredDecomposition, TreeInfeasible, bfs_layers, extract_regular_tree, two_sided_peel
from .search import DEFAULT_BUDGET, BudgetExceeded, Matcher, SubdivisionWitness, _Counter


class LiftFailed(GraphError):
    def __init__(self, message: str, vertex: int):
        super().__init__(message)
        self.vertex = vertex


def lift_cycle_to_cone(
    g: Graph,
    layers: LayeredDecomposition,
    cyc: Sequence[int],
    min_backdegree: int = 1,
    parents: Mapping[int, int] | None = None,
) -> SubdivisionWitness:
    """Turn a ``2k``-cycle through ``L_1 ∪ L_2`` or ``L_2 ∪ L_3`` into a subdivided cone at the root.

    The cycle's ``L_2`` vertices become the cycle branch vertices and the
    root becomes the apex. Each ``L_2`` branch vertex takes as apex bridge an
    unused ``L_1`` neighbour, its entry in ``parents`` when that is still
    free. Raises :class:`LiftFailed` naming the first vertex left without one.
    """
    k2 = len(cyc)
    if k2 < 6 or k2 % 2:
        raise GraphError("cycle must have even length at least 6")
    if len(set(cyc)) != k2:
        raise GraphError("cycle repeats a vertex")
    for i in range(k2):
        if not g.has_edge(cyc[i], cyc[(i + 1) % k2]):
            raise GraphError(f"({cyc[i]}, {cyc[(i + 1) % k2]}) is not an edge")
    if layers.depth < 2:
        raise GraphError("need layers up to depth 2")
    l1, l2 = layers.layers[1], layers.layers[2]
    start = next((i for i in range(k2) if cyc[i] in l2), None)
    if start is None:
        raise GraphError("cycle has no vertex in L_2")
    cyc = list(cyc[start:]) + list(cyc[:start])
    branch_cycle = cyc[0::2]
    other = cyc[1::2]
    if not all(v in l2 for v in branch_cycle):
        raise GraphError("cycle must alternate between L_2 and a neighbouring layer")
    other_layer = layers.layer_of(other[0])
    if other_layer not in (1, 3) or any(layers.layer_of(v) != other_layer for v in other):
        raise GraphError("cycle must alternate between L_2 and a neighbouring layer")
    l1_mask = mask_of(l1)
    for w in branch_cycle:
        if (g.nbr_mask(w) & l1_mask).bit_count() < min_backdegree:
            raise GraphError(f"vertex {w} has fewer than {min_backdegree} neighbours in L_1")
    k = k2 // 2
    used = set(cyc) | {layers.root}
    apex_bridge = []
    for w in branch_cycle:
        options = g.nbr_mask(w) & l1_mask & ~mask_of(used)
        p = parents.get(w) if parents else None
        if p is not None and (options >> p) & 1:
            choice = p
        elif options:
            choice = (options & -options).bit_length() - 1
        else:
            raise LiftFailed(f"no unused L_1 neighbour left for {w}", w)
        used.add(choice)
        apex_bridge.append(choice)
    branch = {i: w for i, w in enumerate(branch_cycle)}
    branch[k] = layers.root
    bridge = {}
    for i in range(k):
        j = (i + 1) % k
        bridge[(min(i, j), max(i, j))] = other[i]
        bridge[(i, k)] = apex_bridge[i]
    wit = SubdivisionWitness(cone_over_cycle(k), g, branch, bridge)
    wit.validate()
    return wit


@dataclass
class PipelineConfig:
    root: int | None = None
    d1: int | None = None
    d2: int | None = None
    slack: float = 0.5
    budget: int | None = DEFAULT_BUDGET
    max_cycles: int = 64


@dataclass
class PipelineTrace:
    root: int | None = None
    layer_sizes: list[int] = field(default_factory=list)
    peel: dict[str, Any] | None = None
    stages: list[dict[str, Any]] = field(default_factory=list)
    tree: dict[str, Any] | None = None
    cycle: list[int] | None = None
    branch: str | None = None
    lift: dict[str, Any] | None = None
    outcome: str = "not_started"
    expansions: int = 0

    def note(self, stage: str, status: str, **info: Any) -> None:
        self.stages.append({"stage": stage, "status": status, **info})

    def to_json(self) -> dict[str, Any]:
        return asdict(self)


def _alternating_cycle(
    host: Graph,
    k: int,
    inner: int,
    outer: int,
    counter: _Counter,
    classes: Mapping[int, int] | None = None,
):
    """Yield ``2k``-cycles with even positions in ``inner`` and odd positions in ``outer``."""
    pattern = cycle(2 * k)
    allowed = {i: inner if i % 2 == 0 else outer for i in range(2 * k)}
    distinct = range(0, 2 * k, 2) if classes is not None else ()
    matcher = Matcher(pattern)
    seen: set[frozenset[int]] = set()
    for mapping in matcher.iter(host, counter.budget, allowed=allowed, classes=classes, distinct=distinct, counter=counter):
        # each cycle appears once per rotation and reflection
        key = frozenset(mapping)
        if key in seen:
            continue
        seen.add(key)
        yield list(mapping)


def pipeline_cone_cycle(g: Graph, k: int, config: PipelineConfig | None = None) -> tuple[SubdivisionWitness | None, PipelineTrace]:
    """Try to embed the subdivided cone over ``C_k`` by following the layered argument.

    A None result only means this strategy failed; ``trace.outcome`` names
    the stage. Stage one peels ``G[L_1 ∪ L_2]`` and looks for a cycle there.
    Stage two extracts a depth-two tree and looks for a cycle in
    ``G[L_2 ∪ L_3]`` whose ``L_2`` vertices have distinct tree parents.
    """
    if k < 3:
        raise GraphError("k must be at least 3")
    cfg = config or PipelineConfig()
    trace = PipelineTrace()
    if g.num_edges == 0:
        trace.outcome = "no_edges"
        return None, trace
    r = cfg.root if cfg.root is not None else max(range(g.n), key=lambda v: (g.degree(v), -v))
    g.check_vertex(r)
    trace.root = r
    layers = bfs_layers(g, r, 3)
    trace.layer_sizes = layers.sizes()
    counter = _Counter(cfg.budget)
    try:
        wit = _stage_l1_l2(g, k, layers, cfg, counter, trace)
        if wit is None:
            wit = _stage_l2_l3(g, k, layers, cfg, counter, trace)
    except BudgetExceeded:
        trace.outcome = "budget_exceeded"
        trace.expansions = counter.used
        return None, trace
    trace.expansions = counter.used
    if wit is not None:
        trace.outcome = "found"
        trace.lift = {"branch": {str(v): x for v, x in wit.branch.items()}}
    return wit, trace


def _stage_l1_l2(g, k, layers, cfg, counter, trace) -> SubdivisionWitness | None:
    l1, l2 = layers.layers[1], layers.layers[2]
    sub = layers.between(1)
    if sub.graph.num_edges == 0:
        trace.note("l1_l2", "empty")
        trace.outcome = "cycle_stage"
        return None
    keep = sorted(l1 | l2)
    induced, _ = sub.induced(keep)
    peeled, report = two_sided_peel(induced)
    orig = [keep[v] for v in report.kept]
    report.kept = orig
    report.removed = [keep[v] for v in report.removed]
    trace.peel = report.to_json()
    edges = [(orig[u], orig[v]) for u, v in peeled.graph.edges()]
    host = Graph(g.n, edges)
    tried = 0
    for cyc in _alternating_cycle(host, k, mask_of(l2), mask_of(l1), counter):
        tried += 1
        trace.cycle = cyc
        try:
            wit = lift_cycle_to_cone(g, layers, cyc)
        except LiftFailed as exc:
            trace.note("l1_l2_lift", "failed", vertex=exc.vertex)
            if tried >= cfg.max_cycles:
                break
            continue
        trace.branch = "l1_l2"
        trace.note("l1_l2", "found", cycles_tried=tried)
        return wit
    trace.cycle = None
    trace.note("l1_l2", "no_cycle" if tried == 0 else "no_liftable_cycle", cycles_tried=tried)
    return None


def _stage_l2_l3(g, k, layers, cfg, counter, trace) -> SubdivisionWitness | None:
    l1, l2, l3 = layers.layers[1], layers.layers[2], layers.layers[3]
    if not l1 or not l2 or not l3:
        trace.note("tree", "empty_layer")
        trace.outcome = "cycle_stage" if l2 else "tree_stage"
        return None
    d1 = cfg.d1 if cfg.d1 is not None else len(l1)
    d2 = cfg.d2 if cfg.d2 is not None else max(1, len(l2) // len(l1))
    try:
        tree = extract_regular_tree(g, layers.root, d1, d2, cfg.slack, layers)
    except TreeInfeasible as exc:
        trace.tree = exc.partial.to_json()
        trace.note("tree", "infeasible", d1=d1, d2=d2)
        trace.outcome = "tree_stage"
        return None
    trace.tree = tree.to_json()
    parents = tree.parent_of()
    t2 = mask_of(parents)
    tried = 0
    for cyc in _alternating_cycle(g, k, t2, mask_of(l3), counter, classes=parents):
        tried += 1
        # the search constraint already forces distinct parents
        assert len({parents[v] for v in cyc[0::2]}) == k
        trace.cycle = cyc
        try:
            wit = lift_cycle_to_cone(g, layers, cyc, parents=parents)
        except LiftFailed as exc:
            trace.note("l2_l3_lift", "failed", vertex=exc.vertex)
            if tried >= cfg.max_cycles:
                break
            continue
        trace.branch = "l2_l3"
        trace.note("l2_l3", "found", cycles_tried=tried, parents=[parents[v] for v in cyc[0::2]])
        return wit
    trace.cycle = None
    trace.note("l2_l3", "no_cycle" if tried == 0 else "no_liftable_cycle", cycles_tried=tried)
    trace.outcome = "cycle_stage"
    return None
