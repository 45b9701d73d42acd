"""Named reproduction profiles bundling CLI settings."""

from __future__ import annotations

from .errors import DataError

# The 985-university study: pinned extreme set (order fixes facet
# numbering), support checked over the extremes, aggregation following the
# published results table.
PAPER_985_EXTREMES = (
    "CQU", "OUC", "WHU", "CUN", "BUAA", "HIT", "XMU", "BNU", "NEU", "SJTU", "FDU",
)

PROFILES = {
    "paper-985": {
        "extremes": PAPER_985_EXTREMES,
        "support_scope": "extremes",
        "aggregation": "table4-max",
    },
}


def get_profile(name: str) -> dict:
    try:
        return PROFILES[name]
    except KeyError:
        raise DataError(f"unknown profile {name!r}; available: {sorted(PROFILES)}") from None
