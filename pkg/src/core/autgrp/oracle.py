"""Brute-force oracles: every one of the n! vertex permutations is tried."""
from __future__ import annotations

from itertools import permutations
from typing import Optional

from src.config import settings
from src.core.digraph.digraph import ColoredDigraph, is_automorphism
from src.core.errors import CapExceededError
from src.core.perm.group import PermGroup, group_from_generators
from src.core.perm.permutation import Permutation


def _check_degree(n: int) -> None:
    cap = settings.brute_force_max_degree
    if n > cap:
        raise CapExceededError("n for brute-force search", n, cap)


def brute_force_automorphisms(gamma: ColoredDigraph) -> PermGroup:
    _check_degree(gamma.n)
    found = []
    for images in permutations(range(gamma.n)):
        p = Permutation._unchecked(images)
        if is_automorphism(gamma, p):
            found.append(p)
    return group_from_generators(gamma.n, found)


def brute_force_isomorphism(source: ColoredDigraph, target: ColoredDigraph) -> Optional[Permutation]:
    """Some p with source relabelled by p equal to target, or None."""
    if source.n != target.n or source.arc_count != target.arc_count:
        return None
    if sorted(source.colors) != sorted(target.colors):
        return None
    _check_degree(source.n)
    for images in permutations(range(source.n)):
        p = Permutation._unchecked(images)
        if source.relabel(p) == target:
            return p
    return None


def brute_force_isomorphic(source: ColoredDigraph, target: ColoredDigraph) -> bool:
    return brute_force_isomorphism(source, target) is not None
