"""Resource caps for the exhaustive routines.

``SUBTURAN_CAP_OVERRIDE`` holds comma-separated ``name=value`` pairs, e.g.
``exact_ex_n=11,family_f_size=8``; ``SUBTURAN_CAP_OVERRIDE=off`` disables
every cap.
"""

from __future__ import annotations

import os

DEFAULTS = {
    "exact_ex_n": 10,
    "exact_z_total": 14,
    "family_f_size": 7,
    "gq_q": 4,
    "exact_star_pool": 20,
}


class ResourceLimitError(RuntimeError):
    """A request exceeds a configured cap or a search budget."""


def cap(name: str) -> float:
    raw = os.environ.get("SUBTURAN_CAP_OVERRIDE", "").strip()
    if raw.lower() in {"off", "none", "unlimited"}:
        return float("inf")
    for item in filter(None, (p.strip() for p in raw.split(","))):
        key, _, value = item.partition("=")
        if key.strip() == name:
            return float(value)
    return DEFAULTS[name]


def require(name: str, value: float, what: str) -> None:
    limit = cap(name)
    if value > limit:
        raise ResourceLimitError(f"{what} = {value} exceeds cap {name}={limit:g}; raise it via SUBTURAN_CAP_OVERRIDE")
