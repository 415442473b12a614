"""Named graph families, the 1-subdivision operator and the degenerate family.

Vertex layouts are fixed and documented per constructor so that callers can
refer to specific vertices (e.g. the apex of a cone, the extra vertex of
``k_plus``).
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from typing import Literal, Sequence

from ._limits import require
from .canon import canonical_form
from .graph import Graph, GraphError


@dataclass(frozen=True)
class SubdivisionLabels:
    """Where each original vertex / edge of ``H`` sits inside ``H^sub``."""

    branch: dict[int, int]
    bridge: dict[tuple[int, int], int]


def cycle(k: int) -> Graph:
    if k < 3:
        raise GraphError("a cycle needs k >= 3")
    return Graph(k, [(i, (i + 1) % k) for i in range(k)])


def path(n: int) -> Graph:
    """Path on ``n`` vertices."""
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def complete_graph(n: int) -> Graph:
    return Graph(n, itertools.combinations(range(n), 2))


def complete_multipartite(sizes: Sequence[int]) -> Graph:
    """Parts are consecutive id ranges in the order given."""
    if any(s < 1 for s in sizes):
        raise GraphError("part sizes must be positive")
    starts = list(itertools.accumulate([0, *sizes]))
    n = starts[-1]
    part = [i for i, s in enumerate(sizes) for _ in range(s)]
    return Graph(n, [(u, v) for u, v in itertools.combinations(range(n), 2) if part[u] != part[v]])


def complete_bipartite(s: int, t: int) -> Graph:
    """Left part ``0..s-1``, right part ``s..s+t-1``."""
    return complete_multipartite([s, t])


def cone_over_cycle(k: int) -> Graph:
    """Cycle on ``0..k-1`` plus the apex ``k`` joined to all of it."""
    if k < 3:
        raise GraphError("cone over a cycle needs k >= 3")
    return Graph(k + 1, [(i, (i + 1) % k) for i in range(k)] + [(i, k) for i in range(k)])


def k_plus(s: int, t: int) -> Graph:
    """``K_{s,t}`` plus a vertex joined to one s-side vertex and the whole t-side.

    s-side ``0..s-1``, t-side ``s..s+t-1``, extra vertex ``s+t`` adjacent to
    ``0`` and every t-side vertex.
    """
    if s < 1 or t < 1:
        raise GraphError("k_plus needs s, t >= 1")
    r = s + t
    edges = [(i, s + j) for i in range(s) for j in range(t)]
    edges.append((0, r))
    edges.extend((s + j, r) for j in range(t))
    return Graph(s + t + 1, edges)


def k_h_t(h: Graph, t: int) -> Graph:
    """``h`` joined completely to ``t`` new independent vertices ``h.n..h.n+t-1``."""
    edges = list(h.edges()) + [(v, h.n + j) for v in range(h.n) for j in range(t)]
    return Graph(h.n + t, edges)


def subdivide(h: Graph) -> tuple[Graph, SubdivisionLabels]:
    """Replace every edge by a path of length two.

    Branch vertices keep their ids; the bridge of the ``i``-th edge in
    ``h.edges()`` order gets id ``h.n + i``.
    """
    edges = h.edges()
    bridge = {e: h.n + i for i, e in enumerate(edges)}
    out = []
    for (u, v), b in bridge.items():
        out.append((u, b))
        out.append((v, b))
    labels = SubdivisionLabels(branch={v: v for v in range(h.n)}, bridge=bridge)
    return Graph(h.n + len(edges), out), labels


# -- the degenerate family -------------------------------------------------

Choice = tuple  # ("bij", i, j) | ("fresh",) | ("reuse", index into fresh connectors)


def family_member(s: int, t: int, choices: Sequence[Choice]) -> Graph:
    """Build one member of the degenerate family from explicit connector choices.

    Layout: ``y_i = i`` (``0..s-1``), ``z_j = s + j``, ``b_ij = s + t + i*t + j``,
    root ``r = s + t + s*t``, fresh connectors after that in creation order.
    ``choices`` lists one choice per vertex in the order ``y_1..y_s, z_1..z_t``.
    """
    if len(choices) != s + t:
        raise GraphError(f"need {s + t} connector choices, got {len(choices)}")
    return _build(s, t, choices)


def _build(s: int, t: int, choices: Sequence[Choice]) -> Graph:
    r = s + t + s * t
    edges = [(i, s + t + i * t + j) for i in range(s) for j in range(t)]
    edges += [(s + j, s + t + i * t + j) for i in range(s) for j in range(t)]
    fresh: list[int] = []
    for cur, ch in enumerate(choices):
        if ch[0] == "bij":
            i, j = ch[1], ch[2]
            if not (0 <= i < s and 0 <= j < t):
                raise GraphError(f"no connector b_{i}{j}")
            b = s + t + i * t + j
        elif ch[0] == "fresh":
            b = r + 1 + len(fresh)
            fresh.append(b)
        elif ch[0] == "reuse":
            b = fresh[ch[1]]
        else:
            raise GraphError(f"unknown connector choice {ch!r}")
        edges.append((cur, b))
        edges.append((r, b))
    return Graph(r + 1 + len(fresh), edges)


def _options(s: int, t: int, cur: int, n_fresh: int, mode: str) -> list[Choice]:
    if mode == "strict":
        if cur < s:
            bij = [("bij", cur, j) for j in range(t)]
        else:
            bij = [("bij", i, cur - s) for i in range(s)]
    else:
        bij = [("bij", i, j) for i in range(s) for j in range(t)]
    return bij + [("fresh",)] + [("reuse", f) for f in range(n_fresh)]


def _partial_key(s: int, t: int, choices: list[Choice]) -> bytes:
    """Canonical key of a partial construction that preserves its future options.

    Unprocessed branch vertices and the root keep individual colours, the
    b_ij and the fresh connectors form two further classes.
    """
    g = _build(s, t, choices)
    done = len(choices)
    r = s + t + s * t
    colors = []
    for v in range(g.n):
        if v < s + t:
            colors.append((0, 0) if v < done else (3, v))
        elif v < r:
            colors.append((1, 0))
        elif v == r:
            colors.append((4, 0))
        else:
            colors.append((2, 0))
    return canonical_form(g, colors)


def enumerate_family_F(s: int, t: int, connector_mode: Literal["strict", "liberal"] = "strict") -> list[Graph]:
    """All pairwise non-isomorphic members of the degenerate family for ``(s, t)``.

    Each of ``y_1..y_s, z_1..z_t`` in turn receives a connector that is
    joined to it and to the root: a subdivision vertex ``b_ij`` (in
    ``strict`` mode only one already adjacent to the current vertex), a new
    vertex, or a new vertex introduced earlier. Partial constructions are
    deduplicated after every step, and the output is sorted by canonical
    form.
    """
    if s < 1 or t < 1:
        raise GraphError("family needs s, t >= 1")
    if connector_mode not in ("strict", "liberal"):
        raise GraphError(f"unknown connector mode {connector_mode!r}")
    require("family_f_size", s + t, "s + t")
    frontier: list[list[Choice]] = [[]]
    for cur in range(s + t):
        seen: dict[bytes, list[Choice]] = {}
        for choices in frontier:
            n_fresh = sum(1 for c in choices if c[0] == "fresh")
            for opt in _options(s, t, cur, n_fresh, connector_mode):
                nxt = choices + [opt]
                key = _partial_key(s, t, nxt)
                seen.setdefault(key, nxt)
        frontier = list(seen.values())
    members: dict[bytes, Graph] = {}
    for choices in frontier:
        g = family_member(s, t, choices)
        members.setdefault(canonical_form(g), g)
    return [members[k] for k in sorted(members)]


# -- family spec strings ---------------------------------------------------

_SPEC_RE = re.compile(r"^(?P<kind>[a-z0-9_]+)(?::(?P<params>[^:]*))?(?::(?P<mode>strict|liberal))?$")


@dataclass(frozen=True)
class FamilySpec:
    """Parsed family string such as ``cone_cycle:k=4`` or ``family_f:s=2,t=3:strict``."""

    kind: str
    params: tuple[tuple[str, int], ...]
    mode: str | None = None

    KINDS = {
        "cycle": ("k",),
        "kst": ("s", "t"),
        "cone_cycle": ("k",),
        "k1st": ("s", "t"),
        "kplus": ("s", "t"),
        "family_f": ("s", "t"),
        "complete": ("n",),
        "path": ("n",),
    }

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        m = _SPEC_RE.match(text.strip())
        if not m or m["kind"] not in cls.KINDS:
            raise GraphError(f"unrecognised family spec {text!r}")
        params = {}
        for item in filter(None, (m["params"] or "").split(",")):
            key, eq, value = item.partition("=")
            if not eq or not value.strip().isdigit():
                raise GraphError(f"bad parameter {item!r} in {text!r}")
            params[key.strip()] = int(value)
        need = cls.KINDS[m["kind"]]
        if set(params) != set(need):
            raise GraphError(f"{m['kind']} needs parameters {', '.join(need)}")
        spec = cls(m["kind"], tuple((k, params[k]) for k in need), m["mode"])
        spec._check()
        return spec

    def _check(self) -> None:
        p = dict(self.params)
        if self.kind in ("cycle", "cone_cycle") and p["k"] < 3:
            raise GraphError("k must be at least 3")
        if self.kind in ("kst", "kplus", "family_f") and not (1 <= p["s"] <= p["t"]):
            raise GraphError("need 1 <= s <= t")
        if self.kind == "k1st" and not (1 <= p["s"] <= p["t"]):
            raise GraphError("need 1 <= s <= t")
        if self.mode is not None and self.kind != "family_f":
            raise GraphError("connector mode only applies to family_f")

    def build(self) -> list[Graph]:
        """The graphs this FamilySpec names (one, except for ``family_f``)."""
        p = dict(self.params)
        if self.kind == "cycle":
            return [cycle(p["k"])]
        if self.kind == "kst":
            return [complete_bipartite(p["s"], p["t"])]
        if self.kind == "cone_cycle":
            return [cone_over_cycle(p["k"])]
        if self.kind == "k1st":
            return [complete_multipartite([1, p["s"], p["t"]])]
        if self.kind == "kplus":
            return [k_plus(p["s"], p["t"])]
        if self.kind == "complete":
            return [complete_graph(p["n"])]
        if self.kind == "path":
            return [path(p["n"])]
        return enumerate_family_F(p["s"], p["t"], self.mode or "strict")

    def __str__(self) -> str:
        out = self.kind + ":" + ",".join(f"{k}={v}" for k, v in self.params)
        return out + (f":{self.mode}" if self.mode else "")
