"""Finite groups given by multiplication tables."""

from src.core.groups.finite_group import FiniteGroup
from src.core.groups.catalog import GroupSpec, catalog, make_group, spec_order
from src.core.groups.structure import (
    automorphism_count_bound,
    automorphism_group_of,
    generating_set,
    group_automorphisms,
    normal_subgroups,
    proper_normal_subgroups,
    quotient_group,
    regular_image,
    regular_representation,
    require_normal,
    right_multiplication,
    subgroups,
)

__all__ = [
    "FiniteGroup",
    "GroupSpec",
    "catalog",
    "make_group",
    "spec_order",
    "automorphism_count_bound",
    "automorphism_group_of",
    "generating_set",
    "group_automorphisms",
    "normal_subgroups",
    "proper_normal_subgroups",
    "quotient_group",
    "regular_image",
    "regular_representation",
    "require_normal",
    "right_multiplication",
    "subgroups",
]
