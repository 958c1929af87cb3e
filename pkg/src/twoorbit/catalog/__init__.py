"""Constructors for the concrete group families used throughout the package."""

from __future__ import annotations

from .fields import FiniteField, gf
from .linear import (
    affine,
    affine_two_cycle_element,
    linear_group_order,
    projective_linear,
    singer_element,
    singer_projective,
)
from .mathieu import mathieu
from .spec import GroupSpec, SpecError, parse_group_spec
from .standard import alt, cyc, dih, m10, pairs_action, product_action_wreath, standard, sym

__all__ = [
    "FiniteField",
    "GroupSpec",
    "SpecError",
    "affine",
    "affine_two_cycle_element",
    "alt",
    "cyc",
    "dih",
    "gf",
    "linear_group_order",
    "m10",
    "mathieu",
    "pairs_action",
    "parse_group_spec",
    "product_action_wreath",
    "projective_linear",
    "singer_element",
    "singer_projective",
    "standard",
    "sym",
]
