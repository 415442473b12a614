"""Canonical labelling by colour refinement and individualisation.

The search tree is the usual one: refine the colouring to an equitable
partition, pick the first smallest non-singleton cell, individualise each
of its vertices in turn and recurse. Leaves are discrete colourings, i.e.
vertex orders; the canonical form is the graph6 string of the graph
relabelled by the leaf with the least key, where a leaf's key is the
sequence of node invariants along its path followed by that graph6 string.

Two prunings keep the tree small:

* node invariants: a node whose invariant prefix is larger than the best
  leaf's prefix at the same depth cannot lead to a smaller key;
* automorphisms: two leaves with equal keys yield an automorphism; at a
  node, children in the same orbit of the automorphisms fixing the node's
  individualised vertices are equivalent and only one is explored.
"""

from __future__ import annotations

from collections import Counter
from typing import Hashable, Sequence

from .graph import Graph
from .graphio import to_graph6


def _refine(nbrs: list[list[int]], colors: list[int]) -> tuple[list[int], tuple]:
    """Iterate colour refinement to a stable colouring.

    ``colors`` must be dense ranks ``0..k-1``. Returns the stable colouring,
    again as dense ranks, and a label-independent invariant of it.
    """
    n = len(colors)
    k = len(set(colors))
    while True:
        sigs = [(colors[v], tuple(sorted(colors[w] for w in nbrs[v]))) for v in range(n)]
        counts = Counter(sigs)
        order = sorted(counts)
        if len(order) == k:
            return colors, tuple((s, counts[s]) for s in order)
        rank = {s: i for i, s in enumerate(order)}
        colors = [rank[s] for s in sigs]
        k = len(order)


def _rank(values: Sequence) -> list[int]:
    rank = {x: i for i, x in enumerate(sorted(set(values)))}
    return [rank[x] for x in values]


class _Search:
    def __init__(self, g: Graph):
        self.g = g
        self.nbrs = [g.neighbors(v) for v in range(g.n)]
        self.best_key: tuple | None = None
        self.best_perm: list[int] | None = None
        self.first_key: tuple | None = None
        self.first_perm: list[int] | None = None
        self.first_path: list[int] = []
        self.best_path: list[int] = []
        self.autos: list[list[int]] = []

    def run(self, colors: list[int]) -> None:
        self._node(colors, [], [], False)

    def _node(self, colors: list[int], invs: list, prefix: list[int], better: bool) -> int | None:
        """Explore one search node.

        Returns a depth ``c`` when an automorphism maps the current subtree
        onto an explored one; every node deeper than ``c`` abandons its
        remaining children.
        """
        colors, inv = _refine(self.nbrs, colors)
        invs = invs + [inv]
        depth = len(invs)
        if self.best_key is not None and not better:
            ref = self.best_key[0][:depth]
            cur = tuple(invs)
            if cur > ref:
                return None
            if cur < ref:
                better = True
        n = len(colors)
        cells: dict[int, list[int]] = {}
        for v, c in enumerate(colors):
            cells.setdefault(c, []).append(v)
        if len(cells) == n:
            return self._leaf(colors, tuple(invs), prefix, better)
        target = min((len(cell), c) for c, cell in cells.items() if len(cell) > 1)[1]
        explored: list[int] = []
        orbits = _Orbits(n)
        for v in cells[target]:
            orbits.absorb(self.autos, prefix)
            if any(orbits.same(v, u) for u in explored):
                continue
            explored.append(v)
            child = [2 * c + (0 if w == v else 1) if c == target else 2 * c + 1 for w, c in enumerate(colors)]
            jump = self._node(_rank(child), invs, prefix + [v], better)
            if jump is not None and jump < len(prefix):
                return jump
            # the first child's leaves become the new baseline for its siblings
            better = False
        return None

    def _leaf(self, perm: list[int], invs: tuple, path: list[int], better: bool) -> int | None:
        key = (invs, to_graph6(self.g.relabel(perm)))
        if self.first_key is None:
            self.first_key, self.first_perm, self.first_path = key, perm, path
        if self.best_key is None or better or key < self.best_key:
            self.best_key, self.best_perm, self.best_path = key, perm, path
            return None
        for ref_key, ref_perm, ref_path in (
            (self.first_key, self.first_perm, self.first_path),
            (self.best_key, self.best_perm, self.best_path),
        ):
            if key == ref_key:
                inv_ref = [0] * len(ref_perm)
                for v, p in enumerate(ref_perm):
                    inv_ref[p] = v
                self.autos.append([inv_ref[perm[v]] for v in range(len(perm))])
                common = 0
                while common < min(len(path), len(ref_path)) and path[common] == ref_path[common]:
                    common += 1
                return common
        return None


class _Orbits:
    """Union-find over vertices, fed by automorphisms fixing a prefix."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.seen = 0

    def find(self, x: int) -> int:
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def absorb(self, autos: list[list[int]], prefix: list[int]) -> None:
        for a in autos[self.seen :]:
            if all(a[p] == p for p in prefix):
                for x, y in enumerate(a):
                    rx, ry = self.find(x), self.find(y)
                    if rx != ry:
                        self.parent[rx] = ry
        self.seen = len(autos)

    def same(self, x: int, y: int) -> bool:
        return self.find(x) == self.find(y)


def canonical_labeling(g: Graph, colors: Sequence[Hashable] | None = None) -> list[int]:
    """Permutation ``perm`` such that ``g.relabel(perm)`` is the canonical graph."""
    if g.n == 0:
        return []
    base = list(colors) if colors is not None else [0] * g.n
    if len(base) != g.n:
        raise ValueError("one colour per vertex required")
    deg = g.degrees()
    search = _Search(g)
    search.run(_rank([(_rank(base)[v], deg[v]) for v in range(g.n)]))
    assert search.best_perm is not None
    return search.best_perm


def canonical_form(g: Graph, colors: Sequence[Hashable] | None = None) -> bytes:
    """Byte string equal for two graphs iff they are isomorphic.

    With ``colors`` the isomorphism must also map each colour class onto the
    class of equal rank; colours are compared only by their relative order.
    """
    perm = canonical_labeling(g, colors)
    form = to_graph6(g.relabel(perm)) if g.n else to_graph6(g)
    if colors is not None:
        sizes = sorted(Counter(_rank(list(colors))).items())
        form += b"|" + b",".join(str(s).encode() for _, s in sizes)
    return form


def are_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.n != g2.n or g1.num_edges != g2.num_edges:
        return False
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    return canonical_form(g1) == canonical_form(g2)


def automorphism_orbits(g: Graph) -> list[list[int]]:
    """Vertex orbits under the automorphisms found during canonical search.

    The generators found are not guaranteed to generate the whole group, so
    these orbits may be finer than the true ones; they are only used for
    symmetry reduction, where finer is safe.
    """
    if g.n == 0:
        return []
    search = _Search(g)
    search.run(_rank(g.degrees()))
    orbits = _Orbits(g.n)
    orbits.absorb(search.autos, [])
    groups: dict[int, list[int]] = {}
    for v in range(g.n):
        groups.setdefault(orbits.find(v), []).append(v)
    return sorted(groups.values())


__all__ = ["canonical_form", "canonical_labeling", "are_isomorphic", "automorphism_orbits"]
