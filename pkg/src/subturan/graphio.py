"""graph6 and JSON serialisation.

graph6 follows the format description shipped with nauty: a size header
(``n + 63`` for ``n <= 62``, else ``~`` plus 18 bits, else ``~~`` plus 36
bits) followed by the upper triangle of the adjacency matrix, column by
column, packed six bits per byte with 63 added to each byte.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

from .graph import BipartiteGraph, Graph, GraphError


class Graph6Error(GraphError):
    pass


def _encode_n(n: int) -> bytes:
    if n < 0:
        raise Graph6Error("negative order")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    if n <= 68719476735:
        return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])
    raise Graph6Error("order too large for graph6")


def to_graph6(g: Graph, header: bool = False) -> bytes:
    """Encode without trailing newline."""
    bits = []
    for v in range(1, g.n):
        mv = g.nbr_mask(v)
        for u in range(v):
            bits.append((mv >> u) & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = bytearray()
    for i in range(0, len(bits), 6):
        x = 0
        for b in bits[i : i + 6]:
            x = (x << 1) | b
        body.append(x + 63)
    out = _encode_n(g.n) + bytes(body)
    return (b">>graph6<<" + out) if header else out


def from_graph6(data: bytes | str) -> Graph:
    if isinstance(data, str):
        data = data.encode("ascii")
    data = data.strip()
    if data.startswith(b">>graph6<<"):
        data = data[10:]
    if not data:
        raise Graph6Error("empty graph6 string")
    if any(c < 63 or c > 126 for c in data):
        raise Graph6Error("graph6 bytes must lie in 63..126")
    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6Error("truncated size header")
        n, pos = 0, 8
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
    else:
        if len(data) < 4:
            raise Graph6Error("truncated size header")
        n, pos = 0, 4
        for c in data[1:4]:
            n = (n << 6) | (c - 63)
    nbits = n * (n - 1) // 2
    expected = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != expected:
        raise Graph6Error(f"expected {expected} body bytes for n={n}, got {len(body)}")
    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            byte = body[k // 6] - 63
            if (byte >> (5 - k % 6)) & 1:
                edges.append((u, v))
            k += 1
    return Graph(n, edges)


def graph_to_json(g: Graph | BipartiteGraph) -> dict[str, Any]:
    if isinstance(g, BipartiteGraph):
        out = graph_to_json(g.graph)
        out["parts"] = [sorted(g.part_a), sorted(g.part_b)]
        return out
    return {"n": g.n, "edges": [list(e) for e in g.edges()]}


def graph_from_json(obj: dict[str, Any]) -> Graph | BipartiteGraph:
    try:
        n = int(obj["n"])
        edges = [(int(u), int(v)) for u, v in obj["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed graph JSON: {exc}") from exc
    g = Graph(n, edges)
    parts = obj.get("parts")
    if parts is None:
        return g
    if len(parts) != 2:
        raise GraphError("'parts' must hold exactly two vertex lists")
    return BipartiteGraph(g, frozenset(parts[0]), frozenset(parts[1]))


def read_graph(path: str | Path) -> Graph | BipartiteGraph:
    """Read a ``.json`` graph or the first line of a graph6 file."""
    path = Path(path)
    raw = path.read_bytes()
    if path.suffix == ".json" or raw.lstrip()[:1] == b"{":
        return graph_from_json(json.loads(raw))
    lines = [ln for ln in raw.splitlines() if ln.strip()]
    if not lines:
        raise Graph6Error(f"{path}: no graph")
    return from_graph6(lines[0])


def write_graph(g: Graph | BipartiteGraph, path: str | Path, fmt: str | None = None) -> None:
    path = Path(path)
    fmt = fmt or ("json" if path.suffix == ".json" else "graph6")
    if fmt == "json":
        path.write_text(json.dumps(graph_to_json(g)) + "\n")
    else:
        base = g.graph if isinstance(g, BipartiteGraph) else g
        path.write_bytes(to_graph6(base) + b"\n")
