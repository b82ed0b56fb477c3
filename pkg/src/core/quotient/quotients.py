"""商图构造: normal quotients, odd quotients and the partition-fixing subgroup."""
from __future__ import annotations

import logging
from typing import FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from src.config import settings
from src.core.autgrp.search import automorphism_group
from src.core.digraph.connection_set import ConnectionSet
from src.core.digraph.digraph import ColoredDigraph, is_automorphism, normalise_colors
from src.core.errors import (
    CapExceededError,
    DegreeMismatchError,
    NotNormalError,
    NotSubgroupError,
    PreconditionError,
    VerificationFailure,
)
from src.core.groups.finite_group import FiniteGroup
from src.core.groups.structure import require_normal
from src.core.perm.algorithms import is_normal, require_subgroup
from src.core.perm.group import PermGroup, group_from_generators
from src.core.perm.permutation import Permutation
from src.core.quotient.partition import BlockPartition

logger = logging.getLogger(__name__)


def _require_partition_of(gamma: ColoredDigraph, partition: BlockPartition) -> None:
    if partition.n != gamma.n:
        raise PreconditionError(f"partition of {partition.n} points for a digraph on {gamma.n} vertices")


def _cell_colors(gamma: ColoredDigraph, partition: BlockPartition) -> Tuple[int, ...]:
    return normalise_colors([tuple(sorted(gamma.colors[v] for v in cell)) for cell in partition.cells])


def _elements_capped(group: PermGroup, what: str) -> List[Permutation]:
    cap = settings.overgroup_cap
    if group.order > cap:
        raise CapExceededError(what, group.order, cap)
    return list(group.elements())


# ----------------------------------------------------------------------
# F_S
# ----------------------------------------------------------------------
def subgroup_fixing_partition(
    gamma: ColoredDigraph,
    partition: BlockPartition,
    seed: Optional[PermGroup] = None,
) -> PermGroup:
    """Automorphisms of gamma fixing every cell of ``partition`` setwise.

    Computed as the automorphism group of gamma recoloured by (colour, cell).
    """
    _require_partition_of(gamma, partition)
    recoloured = gamma.recolor([(gamma.colors[v], partition.cell_of[v]) for v in range(gamma.n)])
    return automorphism_group(recoloured, seed=seed)


# ----------------------------------------------------------------------
# partitions and cell actions
# ----------------------------------------------------------------------
def coset_partition(R: FiniteGroup, N: Sequence[int]) -> BlockPartition:
    """Orbits of the right-regular image of N: the cosets gN, ordered by minimum."""
    sub = require_normal(R, N)
    return BlockPartition.from_cells(R.order, R.cosets(sub))


def induced_cell_permutation(p: Permutation, partition: BlockPartition) -> Optional[Permutation]:
    """The permutation of cells induced by p, or None when p does not preserve the partition."""
    if p.degree != partition.n:
        raise DegreeMismatchError(f"permutation of degree {p.degree} for a partition of {partition.n} points")
    index = {m: i for i, m in enumerate(partition.masks)}
    images = []
    for m in partition.masks:
        j = index.get(p.image_of_mask(m))
        if j is None:
            return None
        images.append(j)
    return Permutation._unchecked(tuple(images))


def cell_action_kernel(group: PermGroup, partition: BlockPartition) -> PermGroup:
    """Elements of ``group`` fixing every cell setwise (element filtering)."""
    elems = _elements_capped(group, "|G| for cell_action_kernel")
    masks = partition.masks
    kept = [g for g in elems if all(g.image_of_mask(m) == m for m in masks)]
    return group_from_generators(group.degree, kept)


def conjugate_intersection(group: PermGroup, sub: PermGroup) -> PermGroup:
    """Intersection of the conjugates sub^g over every g in ``group``.

    Shrinks the element set of ``sub`` until it is closed under conjugation by
    the generators of ``group``.
    """
    kept = set(_elements_capped(sub, "|H| for conjugate_intersection"))
    while True:
        nxt = {x for x in kept if all(x.conjugate(s) in kept for s in group.generators)}
        if nxt == kept:
            break
        kept = nxt
    return group_from_generators(group.degree, sorted(kept, key=lambda p: p.images))


def product_set(a: PermGroup, b: PermGroup) -> FrozenSet[Permutation]:
    """{x y : x in a, y in b}."""
    bs = list(b.elements())
    return frozenset(x * y for x in a.elements() for y in bs)


# ----------------------------------------------------------------------
# normal quotient
# ----------------------------------------------------------------------
def block_stabilizer(group: PermGroup, cell: Sequence[int]) -> PermGroup:
    mask = 0
    for v in cell:
        mask |= 1 << v
    elems = _elements_capped(group, "|G| for block_stabilizer")
    return group_from_generators(group.degree, [g for g in elems if g.image_of_mask(mask) == mask])


def stabilizer_identity_holds(group: PermGroup, normal: PermGroup, partition: BlockPartition, vertex: int = 0) -> bool:
    """The stabiliser of the block holding ``vertex`` equals G_vertex · N as a set."""
    cell = partition.cells[partition.cell_of[vertex]]
    lhs = block_stabilizer(group, cell).element_set()
    rhs = product_set(group.point_stabilizer(vertex), normal)
    return lhs == rhs


def _quotient_by_partition(gamma: ColoredDigraph, partition: BlockPartition) -> ColoredDigraph:
    masks = partition.masks
    rows = []
    for cell in partition.cells:
        reach = 0
        for v in cell:
            reach |= gamma.out_adj[v]
        rows.append(sum(1 << j for j, m in enumerate(masks) if reach & m))
    return ColoredDigraph(partition.cell_count, rows, _cell_colors(gamma, partition))


def normal_quotient(gamma: ColoredDigraph, group: PermGroup, normal: PermGroup) -> Tuple[ColoredDigraph, BlockPartition]:
    """Quotient of gamma by the orbits of ``normal``; an arc joins two orbits iff some arc of gamma does.

    Also checks that the stabiliser in G of the orbit of vertex 0 is G_0 · N.
    """
    if group.degree != gamma.n or normal.degree != gamma.n:
        raise DegreeMismatchError("group degrees must equal the vertex count")
    for g in normal.generators:
        if not is_automorphism(gamma, g):
            raise NotSubgroupError(f"{g} is not an automorphism of the digraph")
    for g in group.generators:
        if not is_automorphism(gamma, g):
            raise NotSubgroupError(f"{g} is not an automorphism of the digraph")
    require_subgroup(group, normal, "N")
    if not is_normal(group, normal):
        raise NotNormalError("N is not normal in G")
    if not group.is_transitive():
        raise PreconditionError("G is not vertex-transitive")

    partition = BlockPartition.from_orbits(normal)
    quotient = _quotient_by_partition(gamma, partition)
    if group.order <= settings.fingerprint_element_cap:
        if not stabilizer_identity_holds(group, normal, partition):
            raise VerificationFailure("stabiliser of the block of vertex 0 differs from G_0 N")
    else:
        logger.warning(f"|G| = {group.order}: skipping the block stabiliser check")
    return quotient, partition


# ----------------------------------------------------------------------
# odd quotient
# ----------------------------------------------------------------------
def arc_count_matrix(gamma: ColoredDigraph, partition: BlockPartition) -> np.ndarray:
    """counts[v, j] = number of arcs from v into cell j."""
    counts = np.zeros((gamma.n, partition.cell_count), dtype=np.int64)
    for v, row in enumerate(gamma.out_adj):
        for j, m in enumerate(partition.masks):
            counts[v, j] = bin(row & m).count("1")
    return counts


def odd_quotient(gamma: ColoredDigraph, partition: BlockPartition) -> ColoredDigraph:
    """Arc B -> B' iff the number of arcs from a vertex of B into B' is odd.

    That number must not depend on the vertex chosen in B.
    """
    _require_partition_of(gamma, partition)
    counts = arc_count_matrix(gamma, partition)
    rows = []
    for i, cell in enumerate(partition.cells):
        block = counts[list(cell)]
        if not np.all(block == block[0]):
            j = int(np.flatnonzero((block != block[0]).any(axis=0))[0])
            raise PreconditionError(f"arc count from cell {i} into cell {j} depends on the vertex")
        rows.append(sum(1 << j for j, c in enumerate(block[0]) if c % 2))
    return ColoredDigraph(partition.cell_count, rows, _cell_colors(gamma, partition))


def odd_connection_set(R: FiniteGroup, N: Sequence[int], S: ConnectionSet) -> ConnectionSet:
    """S' = { gN : |S ∩ gN| odd } over R/N (cosets ordered by minimum element)."""
    if S.r != R.order:
        raise DegreeMismatchError(f"connection set over order {S.r} for a group of order {R.order}")
    sub = require_normal(R, N)
    cosets = R.cosets(sub)
    bits = 0
    for i, coset in enumerate(cosets):
        if sum(1 for g in coset if g in S) % 2:
            bits |= 1 << i
    return ConnectionSet(len(cosets), bits)


# ----------------------------------------------------------------------
# parity counting
# ----------------------------------------------------------------------
_PARITY_MAX_BITS = 26


def _parities(r: int, mask: int) -> np.ndarray:
    """Parity of |x ∩ mask| for every x in 0..2^r - 1."""
    x = np.arange(1 << r, dtype=np.int64) & mask
    parity = np.zeros(1 << r, dtype=np.int64)
    for bit in range(r):
        parity ^= (x >> bit) & 1
    return parity


def parity_subset_counts(m: int) -> Tuple[int, int]:
    """(#even-size, #odd-size) subsets of an m-set, by exhaustive scan."""
    if not 0 <= m <= _PARITY_MAX_BITS:
        raise CapExceededError("m for parity scan", m, _PARITY_MAX_BITS)
    parity = _parities(m, (1 << m) - 1)
    odd = int(parity.sum())
    return (1 << m) - odd, odd


def odd_fibre_size(R: FiniteGroup, N: Sequence[int], target: ConnectionSet) -> int:
    """Number of S ⊆ R whose odd connection set over R/N is ``target`` (exhaustive)."""
    sub = require_normal(R, N)
    cosets = R.cosets(sub)
    if target.r != len(cosets):
        raise DegreeMismatchError(f"target over order {target.r}, but R/N has order {len(cosets)}")
    if R.order > _PARITY_MAX_BITS:
        raise CapExceededError("r for odd fibre scan", R.order, _PARITY_MAX_BITS)
    match = np.ones(1 << R.order, dtype=bool)
    for i, coset in enumerate(cosets):
        mask = sum(1 << g for g in coset)
        match &= _parities(R.order, mask) == (target.bits >> i & 1)
    return int(match.sum())


def odd_fibre_bound(r: int, n: int) -> int:
    """2^{r - r/n + 1}: the looser count of connection sets sharing one odd quotient."""
    return 1 << (r - r // n + 1)
