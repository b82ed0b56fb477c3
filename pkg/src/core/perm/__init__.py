"""Permutations and permutation groups."""

from src.core.perm.permutation import Permutation, compose, inverse
from src.core.perm.group import PermGroup, group_from_generators, symmetric_group, trivial_group
from src.core.perm.algorithms import (
    closure,
    conjugate_group,
    core_in,
    group_fingerprint,
    intersection,
    is_normal,
    maximal_overgroups,
    orbits,
    point_stabilizer,
    same_group,
    subgroup_lattice,
)

__all__ = [
    "Permutation",
    "compose",
    "inverse",
    "PermGroup",
    "group_from_generators",
    "symmetric_group",
    "trivial_group",
    "closure",
    "conjugate_group",
    "core_in",
    "group_fingerprint",
    "intersection",
    "is_normal",
    "maximal_overgroups",
    "orbits",
    "point_stabilizer",
    "same_group",
    "subgroup_lattice",
]
