"""Permutation-group toolkit for cyclic two-orbit elements and genus-0 systems."""

from __future__ import annotations

from .perm import CycleType, Permutation, compose, identity, index_of, index_via_fixed_points, inverse
from .group import BlockSystem, PermGroup, block_systems, group_order, rank_and_subdegrees

__all__ = [
    "BlockSystem",
    "CycleType",
    "PermGroup",
    "Permutation",
    "block_systems",
    "compose",
    "group_order",
    "identity",
    "index_of",
    "index_via_fixed_points",
    "inverse",
    "rank_and_subdegrees",
]
__version__ = "0.1.0"
