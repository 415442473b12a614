"""Result record shared by the exact solvers."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any

from ..graph import Graph
from ..graphio import to_graph6

CSV_HEADER_EX = ["n", "pattern", "value", "runtime_ms", "witness_graph6"]
CSV_HEADER_Z = ["n", "m", "pattern", "value", "runtime_ms", "witness_graph6"]


@dataclass
class ExtremalRecord:
    """Exact extremal value with one extremal witness.

    For the bipartite variant ``m`` is the first part size and the witness
    has that part on vertices ``0..m-1``.
    """

    n: int
    pattern: str
    value: int
    witness: Graph
    method: str
    m: int | None = None
    runtime_ms: float = 0.0
    stats: dict[str, Any] = field(default_factory=dict)

    def csv_row(self) -> list[str]:
        g6 = to_graph6(self.witness).decode("ascii")
        head = [str(self.n)] if self.m is None else [str(self.n), str(self.m)]
        return head + [self.pattern, str(self.value), f"{self.runtime_ms:.1f}", g6]

    def to_json(self) -> dict[str, Any]:
        out = {
            "n": self.n,
            "pattern": self.pattern,
            "value": self.value,
            "method": self.method,
            "runtime_ms": round(self.runtime_ms, 1),
            "witness_graph6": to_graph6(self.witness).decode("ascii"),
            "stats": self.stats,
        }
        if self.m is not None:
            out["m"] = self.m
        return out
