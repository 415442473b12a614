"""Exact ``z(m, n, H)``: most edges in a bipartite graph with fixed parts of sizes ``m`` and ``n`` and no ``H``.

Rows (part of size ``m``) are added one at a time as subsets of the
columns, with nonincreasing row sizes. Partial graphs are deduplicated up
to isomorphisms that keep rows as rows and columns as columns, and a
partial graph is cut when even rows as large as its last one cannot reach
the best total found so far.
"""

from __future__ import annotations

import itertools
import time
from functools import lru_cache

from .._limits import require
from ..canon import canonical_form
from ..graph import Graph, GraphError
from ..graphio import from_graph6
from .record import ExtremalRecord
from .turan import FreeChecker, pattern_id


def _graph(m_rows: list[int], n: int) -> Graph:
    """Rows ``0..len-1``, columns after them."""
    r = len(m_rows)
    edges = [(i, r + j) for i, row in enumerate(m_rows) for j in range(n) if (row >> j) & 1]
    return Graph(r + n, edges)


def _key(rows: list[int], n: int) -> bytes:
    return canonical_form(_graph(rows, n), [0] * len(rows) + [1] * n)


def exact_z(m: int, n: int, pattern: Graph) -> ExtremalRecord:
    """Maximum edges of an ``m`` by ``n`` bipartite graph without a copy of ``pattern``.

    Parts are labelled: the witness has the ``m``-part on ``0..m-1``.
    """
    if not (1 <= m <= n):
        raise GraphError("need 1 <= m <= n")
    require("exact_z_total", m + n, "m + n")
    return _exact_z(m, n, canonical_form(pattern))


@lru_cache(maxsize=None)
def _exact_z(m: int, n: int, pform: bytes) -> ExtremalRecord:
    h = from_graph6(pform)
    t0 = time.perf_counter()
    if h.num_edges == 0 and h.n <= m + n:
        raise GraphError("an edgeless pattern is contained in every graph with enough vertices")
    checker = FreeChecker(h)
    full = (1 << n) - 1
    if checker.is_free(_graph([full] * m, n)):
        w = _graph([full] * m, n)
        return ExtremalRecord(n, pattern_id(h), m * n, w, "trivial", m=m, runtime_ms=(time.perf_counter() - t0) * 1000)
    rows_by_size = {k: [sum(1 << j for j in c) for c in itertools.combinations(range(n), k)] for k in range(n + 1)}
    best = -1
    best_rows: dict[bytes, list[int]] = {}
    seen: list[set[bytes]] = [set() for _ in range(m + 1)]
    stats = {"nodes": 0}

    def dfs(rows: list[int], e: int, cap: int) -> None:
        nonlocal best
        stats["nodes"] += 1
        i = len(rows)
        if i == m:
            if e > best:
                best = e
                best_rows.clear()
            if e == best:
                best_rows.setdefault(_key(rows, n), list(rows))
            return
        for k in range(cap, -1, -1):
            if e + k * (m - i) < best:
                break
            for row in rows_by_size[k]:
                new = rows + [row]
                g = _graph(new, n)
                if checker.creates(g, i):
                    continue
                key = _key(new, n)
                if key in seen[i + 1]:
                    continue
                seen[i + 1].add(key)
                dfs(new, e + k, k)

    dfs([], 0, n)
    least = min(best_rows)
    # relabel so the row part is 0..m-1 and columns follow
    witness = _graph(best_rows[least], n)
    stats["seen"] = [len(s) for s in seen]
    return ExtremalRecord(
        n, pattern_id(h), best, witness, "orderly", m=m, runtime_ms=(time.perf_counter() - t0) * 1000, stats=stats
    )
