"""Point-line incidence graph of the symplectic generalized quadrangle ``W(q)``.

Points are the 1-dimensional subspaces of ``GF(q)^4``; lines are the
2-dimensional subspaces on which ``x1 y2 - x2 y1 + x3 y4 - x4 y3``
vanishes. The incidence graph is ``(q+1)``-regular with
``q^3 + q^2 + q + 1`` vertices per side and girth 8.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .._limits import require
from ..graph import BipartiteGraph, Graph, GraphError, girth


class Field:
    """Arithmetic in ``GF(p)`` for prime ``p``, or in ``GF(4)``."""

    def __init__(self, q: int):
        self.q = q
        if _is_prime(q):
            self.add = lambda a, b: (a + b) % q
            self.mul = lambda a, b: (a * b) % q
            self.neg = lambda a: (-a) % q
            self.inv = lambda a: pow(a, q - 2, q)
        elif q == 4:
            # elements 0, 1, w, w^2 = w + 1 as bit pairs; w^2 = w + 1
            exp = [1, 2, 3]
            log = {1: 0, 2: 1, 3: 2}
            self.add = lambda a, b: a ^ b
            self.mul = lambda a, b: 0 if a == 0 or b == 0 else exp[(log[a] + log[b]) % 3]
            self.neg = lambda a: a
            self.inv = lambda a: exp[(-log[a]) % 3]
        else:
            raise GraphError(f"field arithmetic is implemented for primes and q = 4, not q = {q}")

    def elements(self) -> range:
        return range(self.q)


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % d for d in range(2, math.isqrt(q) + 1))


def _is_prime_power(q: int) -> bool:
    if q < 2:
        return False
    p = next(d for d in range(2, q + 1) if q % d == 0)
    while q % p == 0:
        q //= p
    return q == 1


@dataclass(frozen=True)
class GQConstruction:
    q: int
    points: tuple[tuple[int, ...], ...]
    lines: tuple[frozenset[int], ...]
    graph: BipartiteGraph
    """Points are vertices ``0..P-1``, line ``j`` is vertex ``P + j``."""


def _normalise(F: Field, v: tuple[int, ...]) -> tuple[int, ...]:
    lead = next(x for x in v if x)
    s = F.inv(lead)
    return tuple(F.mul(s, x) for x in v)


def _form(F: Field, x, y) -> int:
    a = F.add(F.mul(x[0], y[1]), F.neg(F.mul(x[1], y[0])))
    b = F.add(F.mul(x[2], y[3]), F.neg(F.mul(x[3], y[2])))
    return F.add(a, b)


def gq_incidence_graph(q: int) -> GQConstruction:
    if not _is_prime_power(q):
        raise GraphError(f"q = {q} is not a prime power")
    require("gq_q", q, "q")
    F = Field(q)
    vectors = [v for v in itertools.product(F.elements(), repeat=4) if any(v)]
    points = sorted({_normalise(F, v) for v in vectors})
    index = {p: i for i, p in enumerate(points)}
    lines: set[frozenset[int]] = set()
    for i, p in enumerate(points):
        for r in points[i + 1 :]:
            if _form(F, p, r):
                continue
            span = set()
            for a, b in itertools.product(F.elements(), repeat=2):
                if a or b:
                    v = tuple(F.add(F.mul(a, x), F.mul(b, y)) for x, y in zip(p, r))
                    span.add(index[_normalise(F, v)])
            lines.add(frozenset(span))
    line_list = sorted(lines, key=sorted)
    P = len(points)
    edges = [(pt, P + j) for j, line in enumerate(line_list) for pt in line]
    g = Graph(P + len(line_list), edges)
    bg = BipartiteGraph(g, frozenset(range(P)), frozenset(range(P, P + len(line_list))))
    out = GQConstruction(q, tuple(points), tuple(line_list), bg)
    _validate(out)
    return out


def _validate(c: GQConstruction) -> None:
    q = c.q
    side = q**3 + q**2 + q + 1
    g = c.graph.graph
    if len(c.points) != side or len(c.lines) != side:
        raise AssertionError(f"expected {side} points and lines, got {len(c.points)} and {len(c.lines)}")
    if any(d != q + 1 for d in g.degrees()):
        raise AssertionError("incidence graph is not (q+1)-regular")
    if girth(g) != 8:
        raise AssertionError("incidence graph does not have girth 8")
