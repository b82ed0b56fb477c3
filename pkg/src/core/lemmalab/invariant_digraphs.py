"""Digraphs invariant under a transitive permutation group.

A digraph on Ω is G-invariant iff its arc set is a union of G-orbits on
Ω×Ω, and the orbits of G on Ω×Ω correspond to the orbits of G_ω on Ω.
"""
from __future__ import annotations

import logging
from typing import List, Tuple

from src.core.errors import CapExceededError, PreconditionError, VerificationFailure
from src.core.lemmalab.kernels import count_common_fixed_masks, images_matrix
from src.core.perm.group import PermGroup, group_from_generators
from src.core.perm.permutation import Permutation

logger = logging.getLogger(__name__)

_BRUTE_FORCE_MAX_DEGREE = 4


def invariant_digraph_count(group: PermGroup, omega: int = 0) -> Tuple[int, int]:
    """(kappa, 2^kappa) with kappa the number of G_omega-orbits on all points."""
    if not group.is_transitive():
        raise PreconditionError("invariant_digraph_count needs a transitive group")
    if not 0 <= omega < group.degree:
        raise PreconditionError(f"point {omega} out of range for degree {group.degree}")
    kappa = len(group.point_stabilizer(omega).orbit_cells())
    n = group.degree
    if not group.is_regular() and 4 * kappa > 3 * n:
        raise VerificationFailure(f"non-regular group of degree {n} and order {group.order} has rank {kappa} > 3n/4")
    return kappa, 1 << kappa


def arc_permutation(p: Permutation) -> Permutation:
    """Action of p on ordered pairs, pair (u, v) indexed as u*n + v."""
    n = p.degree
    return Permutation._unchecked(tuple(p.images[u] * n + p.images[v] for u in range(n) for v in range(n)))


def arc_orbit_count(group: PermGroup) -> int:
    """Number of G-orbits on Ω×Ω."""
    n = group.degree
    arcs = group_from_generators(n * n, [arc_permutation(g) for g in group.generators])
    return len(arcs.orbit_cells())


def count_invariant_digraphs(group: PermGroup) -> int:
    """Brute force: scan all 2^{n^2} digraphs (loops allowed) for invariance."""
    n = group.degree
    if n > _BRUTE_FORCE_MAX_DEGREE:
        raise CapExceededError("degree for count_invariant_digraphs", n, _BRUTE_FORCE_MAX_DEGREE)
    gens: List[Permutation] = [arc_permutation(g) for g in group.generators]
    return int(count_common_fixed_masks(images_matrix(gens, n * n)))
