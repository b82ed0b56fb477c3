"""群结构: 正则表示、自同构、子群与商群"""
from __future__ import annotations

import logging
import math
from typing import List, Sequence, Tuple

import numpy as np

from src.config import settings
from src.core.errors import CapExceededError, NotNormalError, NotSubgroupError
from src.core.groups.finite_group import FiniteGroup
from src.core.perm.group import PermGroup, group_from_generators
from src.core.perm.permutation import Permutation

logger = logging.getLogger(__name__)


def right_multiplication(R: FiniteGroup, g: int) -> Permutation:
    """x -> x·g as a permutation of element indices."""
    return Permutation._unchecked(tuple(int(v) for v in R.table[:, g]))


def regular_representation(R: FiniteGroup) -> PermGroup:
    """Right regular representation, generated by the images of a generating set."""
    gens = [right_multiplication(R, g) for g in generating_set(R)]
    return group_from_generators(R.order, gens)


def regular_image(R: FiniteGroup, elements: Sequence[int]) -> PermGroup:
    """Image of the subgroup ``elements`` under the right regular representation."""
    return group_from_generators(R.order, [right_multiplication(R, int(g)) for g in sorted(elements)])


def generating_set(R: FiniteGroup) -> Tuple[int, ...]:
    """Greedy generating set: repeatedly add the smallest element outside the
    current subgroup. Each step at least doubles the subgroup, so the result
    has at most floor(log2 r) elements."""
    gens: List[int] = []
    current = {0}
    while len(current) < R.order:
        g = next(x for x in range(R.order) if x not in current)
        gens.append(g)
        current = set(R.generated_subgroup(gens))
    bound = int(math.floor(math.log2(R.order))) if R.order > 1 else 0
    if len(gens) > bound:  # pragma: no cover - cannot happen for a group
        raise RuntimeError(f"greedy generating set of size {len(gens)} exceeds floor(log2 {R.order})")
    return tuple(gens)


def automorphism_count_bound(r: int) -> int:
    """r^{floor(log2 r)}: every automorphism is fixed by the images of a generating set."""
    return r ** (int(math.floor(math.log2(r))) if r > 1 else 0)


# ----------------------------------------------------------------------
# automorphisms
# ----------------------------------------------------------------------
def _words(R: FiniteGroup, gens: Sequence[int]) -> List[Tuple[int, int, int]]:
    """BFS spanning tree of the Cayley graph on ``gens``: (element, parent, generator slot)."""
    seen = {0}
    tree: List[Tuple[int, int, int]] = []
    queue = [0]
    for x in queue:
        for slot, g in enumerate(gens):
            y = R.mul(x, g)
            if y not in seen:
                seen.add(y)
                tree.append((y, x, slot))
                queue.append(y)
    return tree


def group_automorphisms(R: FiniteGroup, cap: int | None = None) -> List[Permutation]:
    """All automorphisms of R as permutations of element indices, identity first.

    Candidate images of the greedy generating set are restricted to elements
    of the same order; each candidate is extended along a BFS word tree and
    checked as a homomorphism on all r^2 pairs.
    """
    cap = settings.group_automorphism_cap if cap is None else cap
    r = R.order
    if r > cap:
        raise CapExceededError("|R| for group_automorphisms", r, cap)
    gens = generating_set(R)
    tree = _words(R, gens)
    orders = R.element_orders
    choices = [[x for x in range(r) if orders[x] == orders[g]] for g in gens]
    t = R.table

    found: List[Permutation] = []

    def extend(images: Sequence[int]) -> None:
        phi = np.full(r, -1, dtype=np.int64)
        phi[0] = 0
        for y, parent, slot in tree:
            phi[y] = t[phi[parent], images[slot]]
        if len(set(phi.tolist())) != r:
            return
        # phi(a b) == phi(a) phi(b) on every pair
        if not np.array_equal(phi[t], t[phi[:, None], phi[None, :]]):
            return
        found.append(Permutation._unchecked(tuple(int(v) for v in phi)))

    def search(level: int, chosen: List[int]) -> None:
        if level == len(gens):
            extend(chosen)
            return
        for x in choices[level]:
            chosen.append(x)
            search(level + 1, chosen)
            chosen.pop()

    search(0, [])
    found.sort(key=lambda p: (not p.is_identity(), p.images))
    bound = automorphism_count_bound(r)
    if len(found) > bound:  # pragma: no cover - mathematical guarantee
        raise RuntimeError(f"{len(found)} automorphisms exceed the bound {bound}")
    logger.debug(f"{R.name}: {len(found)} automorphisms")
    return found


def automorphism_group_of(R: FiniteGroup) -> PermGroup:
    return group_from_generators(R.order, group_automorphisms(R))


# ----------------------------------------------------------------------
# subgroups
# ----------------------------------------------------------------------
def subgroups(R: FiniteGroup, cap: int | None = None) -> List[Tuple[int, ...]]:
    """Every subgroup as a sorted element tuple, ordered by (size, elements).

    Every subgroup is a join of cyclic subgroups, so joins are closed off
    starting from the cyclic ones until nothing new appears.
    """
    cap = settings.subgroup_lattice_cap if cap is None else cap
    if R.order > cap:
        raise CapExceededError("|R| for subgroup lattice", R.order, cap)
    cyclic = {frozenset(R.generated_subgroup([g])) for g in range(R.order)}
    found = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for h in frontier:
            for c in cyclic:
                if c <= h:
                    continue
                joined = frozenset(R.generated_subgroup(sorted(h | c)))
                if joined not in found:
                    new.add(joined)
        found |= new
        frontier = new
    return sorted((tuple(sorted(s)) for s in found), key=lambda s: (len(s), s))


def normal_subgroups(R: FiniteGroup, cap: int | None = None) -> List[Tuple[int, ...]]:
    """All normal subgroups including {0} and R."""
    return [s for s in subgroups(R, cap) if R.is_normal_subset(s)]


def proper_normal_subgroups(R: FiniteGroup, cap: int | None = None) -> List[Tuple[int, ...]]:
    """Normal subgroups N with 1 < |N| < r."""
    return [s for s in normal_subgroups(R, cap) if 1 < len(s) < R.order]


def require_normal(R: FiniteGroup, N: Sequence[int]) -> Tuple[int, ...]:
    sub = tuple(sorted(int(x) for x in N))
    if not R.is_subgroup(sub):
        raise NotSubgroupError(f"{list(sub)} is not a subgroup of {R.name}")
    if not R.is_normal_subset(sub):
        raise NotNormalError(f"{list(sub)} is not normal in {R.name}")
    return sub


def quotient_group(R: FiniteGroup, N: Sequence[int]) -> Tuple[FiniteGroup, Tuple[int, ...]]:
    """R/N on cosets ordered by minimum element; projection[g] = coset index of g."""
    sub = require_normal(R, N)
    cosets = R.cosets(sub)
    projection = [0] * R.order
    for i, coset in enumerate(cosets):
        for g in coset:
            projection[g] = i
    reps = [c[0] for c in cosets]
    table = [[projection[R.mul(a, b)] for b in reps] for a in reps]
    names = ["{" + ",".join(R.element_names[g] for g in c) + "}" for c in cosets]
    quotient = FiniteGroup(table, element_names=names, name=f"{R.name}/{len(sub)}")
    proj = np.asarray(projection)
    # projection is a homomorphism on all pairs
    if not np.array_equal(proj[R.table], quotient.table[proj[:, None], proj[None, :]]):  # pragma: no cover
        raise RuntimeError("coset projection is not a homomorphism")
    return quotient, tuple(projection)

