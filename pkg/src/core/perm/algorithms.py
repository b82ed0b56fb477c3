"""Algorithms on PermGroup: closure, cores, normality, maximal overgroups."""
from __future__ import annotations

import logging
from typing import Hashable, Iterable, List, Optional, Sequence, Tuple

from src.config import settings
from src.core.errors import CapExceededError, DegreeMismatchError, NotSubgroupError
from src.core.perm.group import PermGroup, group_from_generators
from src.core.perm.permutation import Permutation, check_degrees

logger = logging.getLogger(__name__)


def orbits(group: PermGroup):
    """Orbits of ``group`` on all points as a BlockPartition (cells sorted by minimum)."""
    from src.core.quotient.partition import BlockPartition

    return BlockPartition.from_orbits(group)


def point_stabilizer(group: PermGroup, point: int) -> PermGroup:
    if not 0 <= point < group.degree:
        raise ValueError(f"point {point} out of range for degree {group.degree}")
    return group.point_stabilizer(point)


def closure(group: PermGroup, extra: Iterable[Permutation]) -> PermGroup:
    """Smallest group containing ``group`` and ``extra``."""
    extra = list(extra)
    check_degrees(group.degree, extra)
    return group_from_generators(group.degree, list(group.generators) + extra)


def require_subgroup(big: PermGroup, small: PermGroup, what: str = "group") -> None:
    if small.degree != big.degree:
        raise DegreeMismatchError(f"{what} has degree {small.degree}, expected {big.degree}")
    for g in small.generators:
        if not big.contains(g):
            raise NotSubgroupError(f"{what} generator {g} is not in the overgroup")


def is_normal(group: PermGroup, sub: PermGroup) -> bool:
    """True iff every conjugate of every sub-generator by every group-generator lies in sub."""
    require_subgroup(group, sub, "subgroup")
    return all(sub.contains(h.conjugate(g)) for g in group.generators for h in sub.generators)


def core_in(group: PermGroup, sub: PermGroup) -> PermGroup:
    """Core of ``sub`` in ``group``: the largest subgroup of sub normal in group.

    Iterates C <- {x in C : x^s in C for every generator s} starting from the
    element set of ``sub``; the fixpoint is normalised by every generator, and
    every normal subgroup of group inside sub survives each step.
    """
    require_subgroup(group, sub, "subgroup")
    cap = settings.fingerprint_element_cap
    if sub.order > cap:
        raise CapExceededError("|R| for core computation", sub.order, cap)
    current = set(sub.elements())
    while True:
        nxt = {x for x in current if all(x.conjugate(s) in current for s in group.generators)}
        if nxt == current:
            break
        current = nxt
    core = group_from_generators(group.degree, sorted(current, key=lambda p: p.images))
    logger.debug(f"core of order {core.order} inside |R| = {sub.order}")
    return core


def conjugate_group(group: PermGroup, by: Permutation) -> PermGroup:
    return group_from_generators(group.degree, [g.conjugate(by) for g in group.generators])


def intersection(a: PermGroup, b: PermGroup) -> PermGroup:
    """Element-filtering intersection (desk scale: iterates the smaller group)."""
    small, big = (a, b) if a.order <= b.order else (b, a)
    cap = settings.overgroup_cap
    if small.order > cap:
        raise CapExceededError("|H| for intersection", small.order, cap)
    return group_from_generators(a.degree, [g for g in small.elements() if big.contains(g)])


# ----------------------------------------------------------------------
# fingerprints / equality
# ----------------------------------------------------------------------
def group_fingerprint(group: PermGroup) -> Hashable:
    """Sorted element list for small groups, else (order, orbit signature)."""
    if group.order <= settings.fingerprint_element_cap:
        return tuple(sorted(g.images for g in group.elements()))
    return (group.order, tuple(tuple(c) for c in group.orbit_cells()))


def same_group(a: PermGroup, b: PermGroup) -> bool:
    if a.degree != b.degree or a.order != b.order:
        return False
    return a.is_subgroup_of(b) and b.is_subgroup_of(a)


# ----------------------------------------------------------------------
# maximal overgroups
# ----------------------------------------------------------------------
def maximal_overgroups(ambient: PermGroup, sub: PermGroup, cap: Optional[int] = None) -> List[PermGroup]:
    """Every G with sub < G <= ambient in which sub is maximal, each once.

    Candidates are <sub, a> for a in ambient minus sub; since <sub, a> only
    depends on the double coset sub*a*sub, elements of an already-tried double
    coset are skipped. A candidate G is kept iff <sub, b> == G for every b in
    G minus sub.
    """
    require_subgroup(ambient, sub, "subgroup")
    cap = settings.overgroup_cap if cap is None else cap
    if ambient.order > cap:
        raise CapExceededError("|A| for maximal_overgroups", ambient.order, cap)
    if ambient.order == sub.order:
        return []

    sub_elements = list(sub.elements())
    sub_set = set(sub_elements)
    tried: set[Permutation] = set()
    found: List[PermGroup] = []
    fingerprints: set = set()

    def _span(a: Permutation) -> PermGroup:
        return group_from_generators(ambient.degree, list(sub.generators) + [a])

    for a in ambient.elements():
        if a in sub_set or a in tried:
            continue
        for x in sub_elements:
            xa = x * a
            for y in sub_elements:
                tried.add(xa * y)
        candidate = _span(a)
        fp = group_fingerprint(candidate)
        if fp in fingerprints:
            continue
        fingerprints.add(fp)
        if _is_maximal_over(candidate, sub, sub_set):
            found.append(candidate)

    found.sort(key=lambda g: (g.order, group_fingerprint(g) if g.order <= settings.fingerprint_element_cap else ()))
    logger.debug(f"{len(found)} maximal overgroups of a degree-{sub.degree} group of order {sub.order}")
    return found


def _is_maximal_over(candidate: PermGroup, sub: PermGroup, sub_set: set) -> bool:
    seen: set[Permutation] = set()
    sub_elements = list(sub_set)
    for b in candidate.elements():
        if b in sub_set or b in seen:
            continue
        for x in sub_elements:
            xb = x * b
            for y in sub_elements:
                seen.add(xb * y)
        span = group_from_generators(candidate.degree, list(sub.generators) + [b])
        if span.order != candidate.order:
            return False
    return True


def subgroup_lattice(group: PermGroup, cap: int = 200) -> List[Tuple[Permutation, ...]]:
    """All subgroups of a small group, each as a sorted element tuple.

    Every subgroup is a join of cyclic subgroups; joins are closed off until
    nothing new appears. Used as an oracle at desk scale.
    """
    if group.order > cap:
        raise CapExceededError("|G| for subgroup lattice", group.order, cap)
    cyclic: set[frozenset] = set()
    for g in group.elements():
        cyclic.add(frozenset(g ** k for k in range(g.order)))
    subgroups: set[frozenset] = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new: set[frozenset] = set()
        for h in frontier:
            for c in cyclic:
                if c <= h:
                    continue
                gens = sorted(set(h) | set(c), key=lambda p: p.images)
                joined = frozenset(group_from_generators(group.degree, gens).elements())
                if joined not in subgroups:
                    new.add(joined)
        subgroups |= new
        frontier = new
    return sorted(
        (tuple(sorted(s, key=lambda p: p.images)) for s in subgroups),
        key=lambda t: (len(t), [p.images for p in t]),
    )


def group_from_elements(degree: int, elements: Sequence[Permutation]) -> PermGroup:
    return group_from_generators(degree, sorted(elements, key=lambda p: p.images))
