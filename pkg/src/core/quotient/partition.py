"""Block partitions of a vertex set.

Cells are stored sorted internally and ordered by their minimum vertex, so
the cell holding vertex 0 (the base vertex) is always cell 0.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Any, Dict, Iterable, List, Sequence, Tuple

from src.core.errors import PreconditionError


@dataclass(frozen=True)
class BlockPartition:
    n: int
    cells: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        seen = [False] * self.n
        for cell in self.cells:
            if not cell:
                raise PreconditionError("partition has an empty cell")
            for v in cell:
                if not 0 <= v < self.n:
                    raise PreconditionError(f"vertex {v} out of range for n = {self.n}")
                if seen[v]:
                    raise PreconditionError(f"vertex {v} lies in two cells")
                seen[v] = True
        if not all(seen):
            missing = [v for v, s in enumerate(seen) if not s]
            raise PreconditionError(f"partition does not cover vertices {missing}")

    @classmethod
    def from_cells(cls, n: int, cells: Iterable[Iterable[int]]) -> "BlockPartition":
        normalised = sorted((tuple(sorted(int(v) for v in c)) for c in cells), key=lambda c: c[0] if c else -1)
        return cls(n, tuple(normalised))

    @classmethod
    def singletons(cls, n: int) -> "BlockPartition":
        return cls(n, tuple((v,) for v in range(n)))

    @classmethod
    def whole(cls, n: int) -> "BlockPartition":
        return cls(n, (tuple(range(n)),))

    @classmethod
    def from_orbits(cls, group) -> "BlockPartition":
        """Orbits of a PermGroup on all of its points."""
        return cls.from_cells(group.degree, group.orbit_cells())

    @property
    def base_cell_index(self) -> int:
        return 0

    @property
    def cell_count(self) -> int:
        return len(self.cells)

    @cached_property
    def cell_of(self) -> Tuple[int, ...]:
        """cell_of[v] = index of the cell containing v."""
        out = [0] * self.n
        for i, cell in enumerate(self.cells):
            for v in cell:
                out[v] = i
        return tuple(out)

    @cached_property
    def masks(self) -> Tuple[int, ...]:
        out = []
        for cell in self.cells:
            m = 0
            for v in cell:
                m |= 1 << v
            out.append(m)
        return tuple(out)

    @property
    def representatives(self) -> Tuple[int, ...]:
        """Minimum vertex of each cell."""
        return tuple(c[0] for c in self.cells)

    def is_uniform(self) -> bool:
        return len({len(c) for c in self.cells}) <= 1

    def to_json(self) -> Dict[str, Any]:
        return {"n": self.n, "cells": [list(c) for c in self.cells], "base_cell_index": self.base_cell_index}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "BlockPartition":
        return cls.from_cells(int(data["n"]), data["cells"])


def partition_from_labels(labels: Sequence[int]) -> BlockPartition:
    groups: Dict[int, List[int]] = {}
    for v, label in enumerate(labels):
        groups.setdefault(label, []).append(v)
    return BlockPartition.from_cells(len(labels), groups.values())
