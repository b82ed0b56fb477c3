"""划分固定子群 F_S: the partition-fixing check, common neighbourhoods and Φ counts.

Throughout, N is a normal subgroup of R acting by right multiplication; its
orbits are the cosets gN (cell 0 holds the identity vertex), and F_S is the
subgroup of Aut(Γ(R, S)) fixing every cell setwise.
"""
from __future__ import annotations

import logging
import math
from typing import FrozenSet, List, Literal, Optional, Sequence, Tuple

from pydantic import BaseModel, Field

from src.config import settings
from src.core.census.bounds import BoundParams, bound_eval
from src.core.digraph.cayley import cayley
from src.core.digraph.connection_set import ConnectionSet
from src.core.errors import CapExceededError, PreconditionError, VerificationFailure
from src.core.groups.finite_group import FiniteGroup
from src.core.groups.structure import regular_image, require_normal
from src.core.perm.group import PermGroup, group_from_generators
from src.core.perm.permutation import Permutation
from src.core.quotient.partition import BlockPartition
from src.core.quotient.quotients import coset_partition, subgroup_fixing_partition

logger = logging.getLogger(__name__)

PhiVariant = Literal["normaliser", "plain"]


class FixingWitness(BaseModel):
    cell: int = Field(..., description="cell index (0-based, never the base cell)")
    element: List[int] = Field(..., description="non-identity restricted element, cell re-indexed 0..|N|-1")


class PartitionFixingReport(BaseModel):
    """划分固定检验报告"""
    hypothesis_holds: bool = Field(..., description="no S_i is invariant under a non-identity element of F_S^i")
    fs_order: int = Field(..., description="|F_S|")
    equals_n: bool = Field(..., description="F_S == N")
    witness: Optional[FixingWitness] = Field(default=None, description="first invariant S_i with its element")


def restrict_to_cell(p: Permutation, cell: Sequence[int]) -> Permutation:
    """p on ``cell``, with the cell re-indexed 0..|cell|-1 in ascending vertex order."""
    index = {v: k for k, v in enumerate(cell)}
    try:
        return Permutation._unchecked(tuple(index[p.images[v]] for v in cell))
    except KeyError as e:
        raise PreconditionError(f"{p} does not leave the cell {list(cell)} invariant") from e


def restricted_group(group: PermGroup, cell: Sequence[int]) -> PermGroup:
    """Image of ``group`` under restriction to an invariant cell."""
    return group_from_generators(len(cell), [restrict_to_cell(g, cell) for g in group.generators])


def _require_proper(R: FiniteGroup, N: Sequence[int]) -> Tuple[int, ...]:
    sub = require_normal(R, N)
    if not 1 < len(sub) < R.order:
        raise PreconditionError(f"normal subgroup of order {len(sub)} is not proper and non-trivial in order {R.order}")
    return sub


def _fixing_group(R: FiniteGroup, sub: Sequence[int], S: ConnectionSet, partition: BlockPartition) -> PermGroup:
    return subgroup_fixing_partition(cayley(R, S), partition, seed=regular_image(R, sub))


# ----------------------------------------------------------------------
# partition fixing
# ----------------------------------------------------------------------
def partition_fixing_check(R: FiniteGroup, N: Sequence[int], S: ConnectionSet) -> PartitionFixingReport:
    """Compute F_S and test: if no S_i (i != base cell) is invariant under a
    non-identity element of the restricted stabiliser F_S^i, then F_S = N."""
    cap = settings.lemma_cap
    if R.order > cap:
        raise CapExceededError("r for partition_fixing_check", R.order, cap)
    sub = _require_proper(R, N)
    partition = coset_partition(R, sub)
    fs = _fixing_group(R, sub, S, partition)
    n_image = regular_image(R, sub)
    if not n_image.is_subgroup_of(fs):
        raise VerificationFailure(f"{R.name}: F_S does not contain the regular image of N = {list(sub)}")

    stab = fs.point_stabilizer(0)
    witness = None
    for i, cell in enumerate(partition.cells):
        if i == partition.base_cell_index:
            continue
        local = ConnectionSet.from_elements(len(cell), (k for k, v in enumerate(cell) if v in S))
        restricted = sorted(restricted_group(stab, cell).elements(), key=lambda p: p.images)
        hit = next((h for h in restricted if not h.is_identity() and h.image_of_mask(local.bits) == local.bits), None)
        if hit is not None:
            witness = FixingWitness(cell=i, element=list(hit.images))
            break

    report = PartitionFixingReport(
        hypothesis_holds=witness is None,
        fs_order=fs.order,
        equals_n=fs.order == len(sub),
        witness=witness,
    )
    if report.hypothesis_holds and not report.equals_n:
        raise VerificationFailure(
            f"{R.name}, N = {list(sub)}, S = {S.to_hex()}: hypothesis holds but |F_S| = {fs.order} != {len(sub)}"
        )
    return report


# ----------------------------------------------------------------------
# common out-neighbours
# ----------------------------------------------------------------------
def sigma(R: FiniteGroup, S: ConnectionSet, u: int, j: int, partition: BlockPartition) -> FrozenSet[int]:
    """Common out-neighbours of vertex 0 and u inside cell j.

    Cross-checked against S_j ∩ S·u (out-neighbours of u are S·u).
    """
    if S.r != R.order or partition.n != R.order:
        raise PreconditionError("group, connection set and partition sizes disagree")
    if not 0 <= j < partition.cell_count:
        raise PreconditionError(f"cell index {j} out of range for {partition.cell_count} cells")
    if not 0 <= u < R.order:
        raise PreconditionError(f"vertex {u} out of range for order {R.order}")
    gamma = cayley(R, S)
    cell = set(partition.cells[j])
    common = frozenset(v for v in gamma.out_neighbors(0) if v in cell and gamma.has_arc(u, v))
    formula = frozenset(v for v in S.translate(R.table, u) if v in cell and v in S)
    if common != formula:
        raise VerificationFailure(f"sigma mismatch for S = {S.to_hex()}, u = {u}, j = {j}: {sorted(common)} != {sorted(formula)}")
    return common


# ----------------------------------------------------------------------
# Φ counts
# ----------------------------------------------------------------------
def _normalises(f: Permutation, normal: PermGroup) -> bool:
    return all(normal.contains(x.conjugate(f)) for x in normal.generators)


def in_phi(
    R: FiniteGroup,
    sub: Sequence[int],
    S: ConnectionSet,
    i: int,
    variant: PhiVariant,
    partition: BlockPartition,
) -> bool:
    """Some f in (F_S)_0, normalising N for the ``normaliser`` variant, moves a point of cell i."""
    fs = _fixing_group(R, sub, S, partition)
    stab = fs.point_stabilizer(0)
    cell = partition.cells[i]
    if variant == "plain":
        return any(not restrict_to_cell(g, cell).is_identity() for g in stab.generators)

    cap = settings.overgroup_cap
    if stab.order > cap:
        raise CapExceededError("|(F_S)_0| for the normaliser filter", stab.order, cap)
    normal = regular_image(R, sub)
    return any(
        not restrict_to_cell(f, cell).is_identity() and _normalises(f, normal)
        for f in stab.elements()
    )


def phi_census(R: FiniteGroup, N: Sequence[int], i: int, variant: PhiVariant = "plain") -> Tuple[int, float]:
    """(|Φ_i|, log2 bound) by scanning all 2^r subsets; i is a 0-based non-base cell index."""
    if variant not in ("normaliser", "plain"):
        raise PreconditionError(f"unknown variant {variant!r}")
    cap = settings.phi_census_cap
    if R.order > cap:
        raise CapExceededError("r for phi_census", R.order, cap)
    sub = _require_proper(R, N)
    partition = coset_partition(R, sub)
    if not 0 < i < partition.cell_count:
        raise PreconditionError(f"cell index {i} must be a non-base cell in 1..{partition.cell_count - 1}")

    count = sum(
        1 for bits in range(1 << R.order)
        if in_phi(R, sub, ConnectionSet(R.order, bits), i, variant, partition)
    )
    kind = "normaliser_fixed_orbit" if variant == "normaliser" else "fixed_orbit"
    log2_bound = bound_eval(kind, BoundParams(r=R.order, n=len(sub)))
    if count > 1 << R.order or (count > 0 and math.log2(count) > log2_bound + 1e-9):
        raise VerificationFailure(f"{R.name}: |Φ_{i}| = {count} exceeds 2^{log2_bound:.6f}")
    logger.debug(f"{R.name} N={list(sub)} cell {i} {variant}: |Φ| = {count}, log2 bound {log2_bound:.4f}")
    return count, log2_bound
