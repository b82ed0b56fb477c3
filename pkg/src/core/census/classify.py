"""Classification of a single Cayley digraph: DRR / normal / non-normal."""
from __future__ import annotations

from typing import Optional, Tuple

from src.core.autgrp.search import automorphism_group
from src.core.census.records import CensusRecord, Classification
from src.core.digraph.cayley import cayley
from src.core.digraph.connection_set import ConnectionSet
from src.core.errors import DegreeMismatchError
from src.core.groups.finite_group import FiniteGroup
from src.core.groups.structure import regular_representation
from src.core.perm.algorithms import is_normal
from src.core.perm.group import PermGroup


def cayley_automorphisms(R: FiniteGroup, S: ConnectionSet, reg: Optional[PermGroup] = None) -> Tuple[PermGroup, PermGroup]:
    """(Aut(Γ(R, S)), regular image of R), with the search seeded by the regular image."""
    if S.r != R.order:
        raise DegreeMismatchError(f"connection set over order {S.r} for a group of order {R.order}")
    reg = regular_representation(R) if reg is None else reg
    return automorphism_group(cayley(R, S), seed=reg), reg


def classify(R: FiniteGroup, S: ConnectionSet, reg: Optional[PermGroup] = None, orbit_size: int = 1) -> CensusRecord:
    aut, reg = cayley_automorphisms(R, S, reg)
    if aut.order == R.order:
        cls = Classification.DRR
    elif is_normal(aut, reg):
        cls = Classification.NORMAL_NON_DRR
    else:
        cls = Classification.NON_NORMAL
    return CensusRecord(S, aut.order, cls, orbit_size)
