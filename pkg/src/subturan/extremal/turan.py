"""Exact ``ex(n, H)`` by vertex-by-vertex augmentation with isomorphism pruning.

Every graph has a vertex order in which each vertex has minimum degree
among itself and its predecessors (reverse of repeatedly deleting a
minimum-degree vertex). Deleting a minimum-degree vertex from a graph with
``e`` edges on ``k`` vertices keeps at least ``e (k-2)/k`` edges, so in such
an order the first ``m`` vertices of an extremal graph span at least
``ex(n, H) m (m-1) / (n (n-1))`` edges. The search only builds orders of
this kind, drops isomorphic duplicates at every size, and cuts prefixes
below that density.
"""

from __future__ import annotations

import itertools
import time
from functools import lru_cache

from .._limits import require
from ..canon import automorphism_orbits, canonical_form
from ..finder.search import Matcher
from ..graph import Graph, GraphError
from ..graphio import from_graph6, to_graph6
from .record import ExtremalRecord


class FreeChecker:
    """Does adding vertex ``v`` create a copy of ``pattern`` through ``v``?"""

    def __init__(self, pattern: Graph):
        self.pattern = pattern
        reps = [orbit[0] for orbit in automorphism_orbits(pattern)]
        # isolated pattern vertices never need to sit on the new vertex unless all are isolated
        self.reps = [p for p in reps if pattern.degree(p) > 0] or reps
        self.matchers = {p: Matcher(pattern, [p]) for p in self.reps}

    def creates(self, g: Graph, v: int) -> bool:
        for p in self.reps:
            for _ in self.matchers[p].iter(g, None, fixed={p: v}):
                return True
        return False

    def is_free(self, g: Graph) -> bool:
        return next(Matcher(self.pattern).iter(g, None), None) is None


def pattern_id(h: Graph) -> str:
    return to_graph6(h).decode("ascii") if h.n else "empty"


def _greedy(n: int, checker: FreeChecker, start: Graph) -> Graph:
    """Extend ``start`` to ``n`` vertices, adding edges greedily while the pattern stays absent."""
    masks = [start.nbr_mask(v) for v in range(start.n)] + [0] * (n - start.n)
    for v in range(start.n, n):
        for u in range(v):
            masks[u] |= 1 << v
            masks[v] |= 1 << u
            trial = Graph.from_masks(masks)
            if checker.creates(trial, v):
                masks[u] &= ~(1 << v)
                masks[v] &= ~(1 << u)
    return Graph.from_masks(masks)


def exact_ex(n: int, pattern: Graph) -> ExtremalRecord:
    """Maximum edges of an ``n``-vertex graph with no (not necessarily induced) copy of ``pattern``.

    If ``pattern`` has more than ``n`` vertices the answer is ``K_n``. The
    witness is the canonically least extremal graph.
    """
    if n < 0:
        raise GraphError("n must be non-negative")
    require("exact_ex_n", n, "n")
    return _exact_ex(n, canonical_form(pattern))


@lru_cache(maxsize=None)
def _exact_ex(n: int, pform: bytes) -> ExtremalRecord:
    h = from_graph6(pform)
    pid = pattern_id(h)
    t0 = time.perf_counter()
    if h.n > n:
        w = Graph(n, itertools.combinations(range(n), 2))
        return ExtremalRecord(n, pid, w.num_edges, w, "trivial", runtime_ms=0.0)
    if h.num_edges == 0:
        raise GraphError("an edgeless pattern is contained in every graph with enough vertices")
    checker = FreeChecker(h)
    if n <= 1:
        w = Graph(n)
        return ExtremalRecord(n, pid, 0, w, "trivial")
    prev = _exact_ex(n - 1, pform)
    seed = _greedy(n, checker, prev.witness)
    best = seed.num_edges
    best_forms: set[bytes] = {canonical_form(seed)}
    denom = n * (n - 1)
    stats = {"nodes": 0, "kept": [0] * (n + 1)}
    seen: list[set[bytes]] = [set() for _ in range(n + 1)]

    def dfs(masks: list[int], e: int) -> None:
        nonlocal best
        m = len(masks)
        stats["nodes"] += 1
        if m == n:
            g = Graph.from_masks(masks)
            if e > best:
                best = e
                best_forms.clear()
            if e == best:
                best_forms.add(canonical_form(g))
            return
        # remaining vertices add at most m, m+1, ..., n-1 edges
        if e + (n - 1 + m) * (n - m) // 2 < best:
            return
        degs = [mk.bit_count() for mk in masks]
        low = min(degs, default=0)
        hi_d = low + 1 if m else 0
        need = -(-best * (m + 1) * m // denom) - e
        for d in range(min(hi_d, m), max(need, 0) - 1, -1):
            forced = [u for u in range(m) if degs[u] < d]
            optional = [u for u in range(m) if degs[u] >= d]
            if len(forced) > d:
                continue
            for extra in itertools.combinations(optional, d - len(forced)):
                nb = 0
                for u in forced:
                    nb |= 1 << u
                for u in extra:
                    nb |= 1 << u
                new = [mk | ((nb >> u) & 1) << m for u, mk in enumerate(masks)] + [nb]
                g = Graph.from_masks(new)
                if checker.creates(g, m):
                    continue
                key = canonical_form(g)
                if key in seen[m + 1]:
                    continue
                seen[m + 1].add(key)
                stats["kept"][m + 1] += 1
                dfs(new, e + d)

    dfs([], 0)
    witness = from_graph6(min(best_forms))
    stats["seen"] = [len(s) for s in seen]
    return ExtremalRecord(
        n, pid, best, witness, "orderly", runtime_ms=(time.perf_counter() - t0) * 1000, stats=stats
    )


def ex_table(n_max: int, pattern: Graph) -> list[ExtremalRecord]:
    return [exact_ex(n, pattern) for n in range(1, n_max + 1)]

