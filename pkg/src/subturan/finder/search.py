"""Backtracking subgraph and 1-subdivision search on bitset adjacency."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Any, Iterable, Iterator, Mapping

from .._limits import ResourceLimitError
from ..certify import check_subdivision
from ..families import subdivide
from ..graph import Embedding, Graph, GraphError, NotBipartite, bipartition_of, connected_components, mask_of

DEFAULT_BUDGET = 10**7


class BudgetExceeded(ResourceLimitError):
    def __init__(self, expansions: int):
        super().__init__(f"search budget exhausted after {expansions} extensions")
        self.expansions = expansions


class _Counter:
    __slots__ = ("used", "budget")

    def __init__(self, budget: int | None):
        self.used = 0
        self.budget = budget


def search_order(pattern: Graph, first: Iterable[int] = ()) -> list[int]:
    """Most-constrained-first order: maximise placed neighbours, then recency, then degree."""
    order = list(dict.fromkeys(first))
    placed = {v: i for i, v in enumerate(order)}
    rest = [v for v in range(pattern.n) if v not in placed]
    while rest:
        def key(v: int):
            nb = [placed[u] for u in pattern.neighbors(v) if u in placed]
            return (len(nb), max(nb, default=-1), pattern.degree(v), -v)

        v = max(rest, key=key)
        rest.remove(v)
        placed[v] = len(order)
        order.append(v)
    return order


class Matcher:
    """Reusable search plan for one pattern against many hosts.

    ``fixed`` pattern vertices are placed first, in the given order, so that
    the plan can be reused with different images for them.
    """

    def __init__(self, pattern: Graph, fixed: Iterable[int] = ()):
        self.pattern = pattern
        self.order = search_order(pattern, fixed)
        pos = {v: i for i, v in enumerate(self.order)}
        self.back = [sorted(pos[u] for u in pattern.neighbors(v) if pos[u] < i) for i, v in enumerate(self.order)]
        self.need = [pattern.degree(v) for v in self.order]

    def iter(
        self,
        host: Graph,
        budget: int | None = DEFAULT_BUDGET,
        allowed: Mapping[int, int] | None = None,
        fixed: Mapping[int, int] | None = None,
        classes: Mapping[int, int] | None = None,
        distinct: Iterable[int] = (),
        counter: _Counter | None = None,
    ) -> Iterator[tuple[int, ...]]:
        """Yield mappings (tuple indexed by pattern vertex) of every embedding.

        ``allowed[p]`` is a host bitmask for pattern vertex ``p``; ``fixed``
        pins pattern vertices; pattern vertices in ``distinct`` must land in
        pairwise different ``classes`` (host vertices without a class are
        excluded for them).
        """
        n = self.pattern.n
        if n == 0:
            yield ()
            return
        counter = counter or _Counter(budget)
        full = (1 << host.n) - 1
        by_deg: dict[int, int] = {}
        for d in set(self.need):
            by_deg[d] = mask_of(v for v in range(host.n) if host.degree(v) >= d)
        cand0 = []
        for i, v in enumerate(self.order):
            m = by_deg[self.need[i]]
            if allowed is not None and v in allowed:
                m &= allowed[v]
            if fixed is not None and v in fixed:
                m &= 1 << fixed[v]
            cand0.append(m & full)
        distinct = set(distinct)
        is_distinct = [v in distinct for v in self.order]
        class_mask: dict[int, int] = {}
        if distinct:
            classes = classes or {}
            for x, c in classes.items():
                class_mask[c] = class_mask.get(c, 0) | (1 << x)
            in_class = mask_of(classes)
            cand0 = [m & in_class if is_distinct[i] else m for i, m in enumerate(cand0)]
        img = [0] * n
        back = self.back
        nbr = host.nbr_mask
        order = self.order

        def rec(i: int, used: int, blocked: int) -> Iterator[tuple[int, ...]]:
            cand = cand0[i] & ~used
            for j in back[i]:
                cand &= nbr(img[j])
            if is_distinct[i]:
                cand &= ~blocked
            while cand:
                low = cand & -cand
                x = low.bit_length() - 1
                cand ^= low
                counter.used += 1
                if counter.budget is not None and counter.used > counter.budget:
                    raise BudgetExceeded(counter.used)
                img[i] = x
                if i + 1 == n:
                    out = [0] * n
                    for k, v in enumerate(order):
                        out[v] = img[k]
                    yield tuple(out)
                else:
                    nb = blocked | class_mask[classes[x]] if is_distinct[i] else blocked
                    yield from rec(i + 1, used | low, nb)

        yield from rec(0, 0, 0)


def iter_subgraphs(host: Graph, pattern: Graph, budget: int | None = DEFAULT_BUDGET, **kw) -> Iterator[Embedding]:
    fixed = kw.get("fixed") or {}
    for mapping in Matcher(pattern, fixed).iter(host, budget, **kw):
        yield Embedding(pattern, host, mapping)


def find_subgraph(
    host: Graph,
    pattern: Graph,
    budget: int | None = DEFAULT_BUDGET,
    allowed: Mapping[int, int] | None = None,
    fixed: Mapping[int, int] | None = None,
    classes: Mapping[int, int] | None = None,
    distinct: Iterable[int] = (),
) -> Embedding | None:
    """First embedding of ``pattern`` in ``host`` (not necessarily induced), or None.

    None means the search was exhaustive; running out of ``budget``
    extensions raises :class:`BudgetExceeded` instead.
    """
    for emb in iter_subgraphs(host, pattern, budget, allowed=allowed, fixed=fixed, classes=classes, distinct=distinct):
        emb.validate()
        return emb
    return None


def contains(host: Graph, pattern: Graph, budget: int | None = DEFAULT_BUDGET) -> bool:
    return find_subgraph(host, pattern, budget) is not None


# -- subdivisions ----------------------------------------------------------


def _edge_key(e: tuple[int, int]) -> str:
    return json.dumps([min(e), max(e)]).replace(" ", "")


@dataclass(frozen=True)
class SubdivisionWitness:
    """Images of the branch vertices and of the bridge of every edge of ``pattern``."""

    pattern: Graph
    host: Graph
    branch: dict[int, int]
    bridge: dict[tuple[int, int], int]

    def validate(self) -> None:
        check_subdivision(self.pattern, self.host, self.branch, self.bridge)

    def image(self) -> set[int]:
        return set(self.branch.values()) | set(self.bridge.values())

    def image_graph(self) -> Graph:
        """The embedded copy as a graph on its own image (for isomorphism checks)."""
        verts = sorted(self.image())
        idx = {v: i for i, v in enumerate(verts)}
        edges = []
        for (u, v), b in self.bridge.items():
            edges.append((idx[self.branch[u]], idx[b]))
            edges.append((idx[self.branch[v]], idx[b]))
        return Graph(len(verts), edges)

    def to_json(self) -> dict[str, Any]:
        return {
            "pattern": {"n": self.pattern.n, "edges": [list(e) for e in self.pattern.edges()]},
            "copy": {str(v): x for v, x in sorted(self.branch.items())},
            "bridges": {_edge_key(e): b for e, b in sorted(self.bridge.items())},
        }

    @classmethod
    def from_json(cls, obj: Mapping[str, Any], host: Graph) -> "SubdivisionWitness":
        try:
            p = obj["pattern"]
            pattern = Graph(int(p["n"]), [tuple(e) for e in p["edges"]])
            branch = {int(k): int(v) for k, v in obj["copy"].items()}
            bridge = {}
            for key, b in obj["bridges"].items():
                u, v = json.loads(key)
                bridge[(min(u, v), max(u, v))] = int(b)
        except (KeyError, TypeError, ValueError) as exc:
            raise GraphError(f"malformed witness JSON: {exc}") from exc
        return cls(pattern, host, branch, bridge)


def _role_masks(host: Graph, pattern: Graph) -> list[tuple[int, int]]:
    """(branch mask, bridge mask) alternatives; a single unrestricted one if roles cannot be fixed."""
    full = (1 << host.n) - 1
    if pattern.num_edges == 0 or len([c for c in connected_components(pattern) if len(c) > 1]) != 1:
        return [(full, full)]
    if any(pattern.degree(v) == 0 for v in range(pattern.n)):
        return [(full, full)]
    try:
        bg = bipartition_of(host)
    except NotBipartite:
        return [(full, full)]
    # a connected bipartite image has all branch vertices on one side
    return [(bg.mask_a, bg.mask_b), (bg.mask_b, bg.mask_a)]


def find_subdivision(host: Graph, pattern: Graph, budget: int | None = DEFAULT_BUDGET) -> SubdivisionWitness | None:
    """Embed the 1-subdivision of ``pattern``; None after an exhaustive search.

    On a bipartite host the branch vertices of a connected pattern lie on
    one side, so the search runs once per side choice with roles pinned.
    """
    sub, labels = subdivide(pattern)
    matcher = Matcher(sub)
    counter = _Counter(budget)
    for branch_mask, bridge_mask in _role_masks(host, pattern):
        if branch_mask.bit_count() < pattern.n or bridge_mask.bit_count() < pattern.num_edges:
            continue
        allowed = {v: branch_mask for v in range(pattern.n)}
        allowed.update({b: bridge_mask for b in labels.bridge.values()})
        for mapping in matcher.iter(host, budget, allowed=allowed, counter=counter):
            w = SubdivisionWitness(
                pattern,
                host,
                {v: mapping[v] for v in range(pattern.n)},
                {e: mapping[b] for e, b in labels.bridge.items()},
            )
            w.validate()
            return w
    return None
