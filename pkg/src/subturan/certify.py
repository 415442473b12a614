"""Independent witness checkers.

Nothing here shares code with the search routines: each check walks the
claimed map and asks the host for every required edge directly.
"""

from __future__ import annotations

from typing import Mapping

from .graph import Graph


class InvalidWitness(ValueError):
    pass


def check_embedding(pattern: Graph, host: Graph, mapping: Mapping[int, int]) -> None:
    """Raise :class:`InvalidWitness` unless ``mapping`` embeds ``pattern`` in ``host``."""
    if set(mapping) != set(range(pattern.n)):
        raise InvalidWitness("mapping must cover every pattern vertex")
    images = list(mapping.values())
    if len(set(images)) != len(images):
        raise InvalidWitness("mapping is not injective")
    for x in images:
        if not (0 <= x < host.n):
            raise InvalidWitness(f"image {x} is not a host vertex")
    for u, v in pattern.edges():
        if not host.has_edge(mapping[u], mapping[v]):
            raise InvalidWitness(f"pattern edge ({u}, {v}) -> ({mapping[u]}, {mapping[v]}) missing in host")


def check_subdivision(
    pattern: Graph,
    host: Graph,
    branch: Mapping[int, int],
    bridge: Mapping[tuple[int, int], int],
) -> None:
    """Raise unless ``branch``/``bridge`` realise the 1-subdivision of ``pattern``."""
    if set(branch) != set(range(pattern.n)):
        raise InvalidWitness("branch map must cover every pattern vertex")
    wanted = {tuple(sorted(e)) for e in pattern.edges()}
    got = {tuple(sorted(e)) for e in bridge}
    if wanted != got:
        raise InvalidWitness("bridge map must cover exactly the pattern edges")
    images = list(branch.values()) + list(bridge.values())
    if len(set(images)) != len(images):
        raise InvalidWitness("branch and bridge images must be pairwise distinct")
    for x in images:
        if not (0 <= x < host.n):
            raise InvalidWitness(f"image {x} is not a host vertex")
    for e, b in bridge.items():
        u, v = e
        for end in (u, v):
            if not host.has_edge(branch[end], b):
                raise InvalidWitness(f"bridge {b} of pattern edge {tuple(e)} not adjacent to {branch[end]}")


def is_valid_subdivision(pattern: Graph, host: Graph, branch, bridge) -> bool:
    try:
        check_subdivision(pattern, host, branch, bridge)
    except InvalidWitness:
        return False
    return True
