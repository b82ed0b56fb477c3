"""Structural flags of Aut(Γ(R, S)) against its maximal overgroups of R."""
from __future__ import annotations

import logging
import math
from typing import List, Optional

from pydantic import BaseModel, Field

from src.core.census.classify import cayley_automorphisms
from src.core.digraph.connection_set import ConnectionSet
from src.core.groups.finite_group import FiniteGroup
from src.core.perm.algorithms import core_in, maximal_overgroups
from src.core.perm.group import PermGroup

logger = logging.getLogger(__name__)


class OvergroupFlags(BaseModel):
    """单个极大上群的标志"""
    order: int = Field(..., description="|G|")
    stabilizer_order: int = Field(..., description="|G_1|, stabiliser of the identity vertex")
    core_order: int = Field(..., description="|G_R|, core of R in G")
    h2: bool = Field(..., description="|G_1| > 2^(r^0.499)")
    h3: bool = Field(..., description="|G_R| <= 4 log2 r")
    h4: bool = Field(..., description="some G_R-orbit is moved setwise by G_1")
    h5: bool = Field(..., description="G_R is trivial")


class HypothesisReport(BaseModel):
    group_id: str
    subset_hex: str
    aut_order: int
    h1: bool = Field(..., description="Aut(Γ) > R")
    overgroups: List[OvergroupFlags] = Field(default_factory=list)


def overgroup_flags(group: PermGroup, reg: PermGroup) -> OvergroupFlags:
    r = reg.order
    stab = group.point_stabilizer(0)
    core = core_in(group, reg)
    moved = any(not stab.setwise_stabilizes(cell) for cell in core.orbit_cells())
    return OvergroupFlags(
        order=group.order,
        stabilizer_order=stab.order,
        core_order=core.order,
        h2=math.log2(stab.order) > r ** 0.499,
        h3=core.order <= 4 * math.log2(r),
        h4=moved,
        h5=core.is_trivial(),
    )


def hypothesis_flags(R: FiniteGroup, S: ConnectionSet, reg: Optional[PermGroup] = None) -> HypothesisReport:
    aut, reg = cayley_automorphisms(R, S, reg)
    flags = [overgroup_flags(G, reg) for G in maximal_overgroups(aut, reg)]
    logger.debug(f"{R.name} S={S.to_hex()}: |Aut| = {aut.order}, {len(flags)} maximal overgroups")
    return HypothesisReport(
        group_id=R.name,
        subset_hex=S.to_hex(),
        aut_order=aut.order,
        h1=aut.order > R.order,
        overgroups=flags,
    )
