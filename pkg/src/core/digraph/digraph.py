"""有色有向图 (colored digraph)

Vertices are ``0..n-1``; ``out_adj[v]`` is the out-neighbour bitset of v.
Loops are allowed, multi-arcs cannot be represented. Colours are always
renumbered to a contiguous range starting at 0.
"""
from __future__ import annotations

import logging
import threading
from typing import Any, Dict, Hashable, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.core.errors import DegreeMismatchError, PreconditionError
from src.core.perm.permutation import Permutation

logger = logging.getLogger(__name__)


def normalise_colors(labels: Sequence[Hashable]) -> Tuple[int, ...]:
    """Map arbitrary sortable labels to 0..k-1 by sorted label order."""
    ranks = {label: i for i, label in enumerate(sorted(set(labels)))}
    return tuple(ranks[label] for label in labels)


class ColoredDigraph:
    """Immutable colored digraph.

    The in-adjacency bitsets and the numpy adjacency matrix are filled lazily
    under a lock; the fill is idempotent so concurrent first access is safe.
    """

    __slots__ = ("n", "out_adj", "colors", "_lock", "_in_adj", "_matrix")

    def __init__(self, n: int, out_adj: Sequence[int], colors: Optional[Sequence[int]] = None):
        if n < 0:
            raise PreconditionError(f"negative vertex count {n}")
        if len(out_adj) != n:
            raise DegreeMismatchError(f"{len(out_adj)} adjacency rows for {n} vertices")
        limit = 1 << n
        rows = tuple(int(m) for m in out_adj)
        for v, m in enumerate(rows):
            if not 0 <= m < limit:
                raise PreconditionError(f"row {v} has arcs outside 0..{n - 1}")
        if colors is None:
            cols: Tuple[int, ...] = (0,) * n
        else:
            if len(colors) != n:
                raise DegreeMismatchError(f"{len(colors)} colours for {n} vertices")
            cols = tuple(int(c) for c in colors)
            if cols and set(cols) != set(range(max(cols) + 1)):
                raise PreconditionError(f"colours must be contiguous from 0, got {sorted(set(cols))}")
        self.n = n
        self.out_adj: Tuple[int, ...] = rows
        self.colors: Tuple[int, ...] = cols
        self._lock = threading.Lock()
        self._in_adj: Optional[Tuple[int, ...]] = None
        self._matrix: Optional[np.ndarray] = None

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------
    @classmethod
    def from_arcs(cls, n: int, arcs: Iterable[Tuple[int, int]], colors: Optional[Sequence[int]] = None) -> "ColoredDigraph":
        rows = [0] * n
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise PreconditionError(f"arc ({u}, {v}) outside 0..{n - 1}")
            rows[u] |= 1 << v
        return cls(n, rows, colors)

    @classmethod
    def from_matrix(cls, matrix: np.ndarray, colors: Optional[Sequence[int]] = None) -> "ColoredDigraph":
        m = np.asarray(matrix)
        n = int(m.shape[0])
        rows = [sum(1 << int(v) for v in np.flatnonzero(m[u])) for u in range(n)]
        return cls(n, rows, colors)

    @classmethod
    def empty(cls, n: int) -> "ColoredDigraph":
        return cls(n, [0] * n)

    # ------------------------------------------------------------------
    # queries
    # ------------------------------------------------------------------
    def has_arc(self, u: int, v: int) -> bool:
        return bool(self.out_adj[u] >> v & 1)

    def out_neighbors(self, v: int) -> Tuple[int, ...]:
        m = self.out_adj[v]
        return tuple(w for w in range(self.n) if m >> w & 1)

    def arcs(self) -> List[Tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in self.out_neighbors(u)]

    @property
    def arc_count(self) -> int:
        return sum(bin(m).count("1") for m in self.out_adj)

    def has_loops(self) -> bool:
        return any(m >> v & 1 for v, m in enumerate(self.out_adj))

    @property
    def color_count(self) -> int:
        return max(self.colors) + 1 if self.colors else 0

    @property
    def in_adj(self) -> Tuple[int, ...]:
        if self._in_adj is None:
            with self._lock:
                if self._in_adj is None:
                    rows = [0] * self.n
                    for u, m in enumerate(self.out_adj):
                        v = 0
                        while m:
                            if m & 1:
                                rows[v] |= 1 << u
                            m >>= 1
                            v += 1
                    self._in_adj = tuple(rows)
        return self._in_adj

    @property
    def matrix(self) -> np.ndarray:
        """Read-only 0/1 adjacency matrix (int64), row u = out-arcs of u."""
        if self._matrix is None:
            with self._lock:
                if self._matrix is None:
                    mat = np.zeros((self.n, self.n), dtype=np.int64)
                    for u, v in self.arcs():
                        mat[u, v] = 1
                    mat.setflags(write=False)
                    self._matrix = mat
        return self._matrix

    # ------------------------------------------------------------------
    # transformations
    # ------------------------------------------------------------------
    def relabel(self, p: Permutation) -> "ColoredDigraph":
        """Digraph in which vertex v is renamed p(v)."""
        if p.degree != self.n:
            raise DegreeMismatchError(f"relabelling of degree {p.degree} for {self.n} vertices")
        rows = [0] * self.n
        colors = [0] * self.n
        for v in range(self.n):
            rows[p.images[v]] = p.image_of_mask(self.out_adj[v])
            colors[p.images[v]] = self.colors[v]
        return ColoredDigraph(self.n, rows, colors)

    def recolor(self, labels: Sequence[Hashable]) -> "ColoredDigraph":
        """Same arcs with new colours; labels are renumbered by sorted order."""
        if len(labels) != self.n:
            raise DegreeMismatchError(f"{len(labels)} colour labels for {self.n} vertices")
        return ColoredDigraph(self.n, self.out_adj, normalise_colors(list(labels)))

    def induced_on(self, vertices: Sequence[int]) -> "ColoredDigraph":
        """Subdigraph on ``vertices``, renumbered 0.. in the given order."""
        index = {v: i for i, v in enumerate(vertices)}
        rows = []
        for v in vertices:
            rows.append(sum(1 << index[w] for w in self.out_neighbors(v) if w in index))
        return ColoredDigraph(len(vertices), rows, normalise_colors([self.colors[v] for v in vertices]))

    # ------------------------------------------------------------------
    # equality / pickling / json
    # ------------------------------------------------------------------
    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, ColoredDigraph)
            and self.n == other.n
            and self.out_adj == other.out_adj
            and self.colors == other.colors
        )

    def __hash__(self) -> int:
        return hash((self.n, self.out_adj, self.colors))

    def __getstate__(self) -> Dict[str, Any]:
        return {"n": self.n, "out_adj": self.out_adj, "colors": self.colors}

    def __setstate__(self, state: Dict[str, Any]) -> None:
        self.n = state["n"]
        self.out_adj = state["out_adj"]
        self.colors = state["colors"]
        self._lock = threading.Lock()
        self._in_adj = None
        self._matrix = None

    def to_json(self) -> Dict[str, Any]:
        return {"n": self.n, "arcs": [list(a) for a in self.arcs()], "colors": list(self.colors)}

    @classmethod
    def from_json(cls, data: Dict[str, Any]) -> "ColoredDigraph":
        n = int(data["n"])
        return cls.from_arcs(n, [tuple(a) for a in data.get("arcs", [])], data.get("colors"))

    def __repr__(self) -> str:
        return f"ColoredDigraph(n={self.n}, arcs={self.arc_count}, colors={self.color_count})"


def is_automorphism(gamma: ColoredDigraph, p: Permutation) -> bool:
    """True iff p maps the arc set onto itself and preserves colours."""
    if p.degree != gamma.n:
        raise DegreeMismatchError(f"permutation of degree {p.degree} for a digraph on {gamma.n} vertices")
    img = p.images
    colors = gamma.colors
    if any(colors[img[v]] != colors[v] for v in range(gamma.n)):
        return False
    rows = gamma.out_adj
    return all(p.image_of_mask(rows[u]) == rows[img[u]] for u in range(gamma.n))


def is_isomorphism(source: ColoredDigraph, target: ColoredDigraph, p: Permutation) -> bool:
    """True iff relabelling ``source`` by p gives exactly ``target``."""
    if source.n != target.n:
        return False
    return source.relabel(p) == target
