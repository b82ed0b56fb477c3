"""Cayley digraphs Γ(R, S): arc (g, h) iff h·g^-1 ∈ S, i.e. h = s·g."""
from __future__ import annotations

import numpy as np

from src.core.digraph.connection_set import ConnectionSet
from src.core.digraph.digraph import ColoredDigraph
from src.core.errors import DegreeMismatchError
from src.core.groups.finite_group import FiniteGroup


def cayley(R: FiniteGroup, S: ConnectionSet) -> ColoredDigraph:
    if S.r != R.order:
        raise DegreeMismatchError(f"connection set over order {S.r} for a group of order {R.order}")
    r = R.order
    members = np.array(S.elements, dtype=np.int64)
    rows = [0] * r
    if members.size:
        # column g of table[members] lists s·g for s in S
        heads = R.table[members]
        weights = [1 << h for h in range(r)]
        for g in range(r):
            rows[g] = sum(weights[int(h)] for h in heads[:, g])
    return ColoredDigraph(r, rows)
