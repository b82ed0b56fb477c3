"""置换群: base + strong generating set (deterministic Schreier-Sims)

The stabiliser chain is built with Holt's SCHREIERSIMS loop. New base points
are always the smallest point moved by the element that needs one, so the
base (and hence every transversal and the element iteration order) is a pure
function of the generator list.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from itertools import product
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple

from src.core.errors import DegreeMismatchError
from src.core.perm.permutation import Permutation, check_degrees

logger = logging.getLogger(__name__)


@dataclass
class _Level:
    """One level of the stabiliser chain."""
    point: int
    generators: List[Permutation] = field(default_factory=list)
    # orbit point -> u with point^u == orbit point (insertion order = BFS order)
    transversal: Dict[int, Permutation] = field(default_factory=dict)


def _orbit_transversal(point: int, gens: Sequence[Permutation], degree: int) -> Dict[int, Permutation]:
    trans = {point: Permutation.identity(degree)}
    queue = [point]
    for x in queue:
        ux = trans[x]
        for g in gens:
            y = g.images[x]
            if y not in trans:
                trans[y] = ux * g
                queue.append(y)
    return trans


def _sift(levels: Sequence[_Level], g: Permutation) -> Tuple[Permutation, int]:
    """Strip g through the chain; returns (residue, level where it dropped out)."""
    for i, level in enumerate(levels):
        beta = g.images[level.point]
        u = level.transversal.get(beta)
        if u is None:
            return g, i
        g = g * u.inverse()
    return g, len(levels)


class _ChainBuilder:
    def __init__(self, degree: int, base_prefix: Sequence[int] = ()):
        self.degree = degree
        self.levels: List[_Level] = [_Level(point=int(b)) for b in base_prefix]
        self.strong: List[Permutation] = []
        for i in range(len(self.levels)):
            self._rebuild(i)

    @property
    def base(self) -> List[int]:
        return [lv.point for lv in self.levels]

    def _rebuild(self, i: int) -> None:
        level = self.levels[i]
        prefix = [lv.point for lv in self.levels[:i]]
        level.generators = [s for s in self.strong if all(s.images[b] == b for b in prefix)]
        level.transversal = _orbit_transversal(level.point, level.generators, self.degree)

    def _append_strong(self, h: Permutation, drop_level: int) -> int:
        """Register a residue that dropped out at ``drop_level``; return the level to resume at."""
        self.strong.append(h)
        if drop_level == len(self.levels):
            moved = h.first_moved_point()
            # h fixes every base point, so its first moved point is a new base point
            self.levels.append(_Level(point=moved))
        for level in range(drop_level + 1):
            self._rebuild(level)
        return drop_level

    def add(self, g: Permutation) -> bool:
        """Add a generator; returns False when g was already a member."""
        residue, j = _sift(self.levels, g)
        if j == len(self.levels) and residue.is_identity():
            return False
        self._complete(self._append_strong(residue, j))
        return True

    def _complete(self, i: int) -> None:
        while i >= 0:
            level = self.levels[i]
            restart = None
            for beta, u_beta in list(level.transversal.items()):
                for s in level.generators:
                    gamma = s.images[beta]
                    h = u_beta * s * level.transversal[gamma].inverse()
                    if h.is_identity():
                        continue
                    residue, j = _sift(self.levels[i + 1:], h)
                    j += i + 1
                    if j < len(self.levels) or not residue.is_identity():
                        restart = self._append_strong(residue, j)
                        break
                if restart is not None:
                    break
            if restart is None:
                i -= 1
            else:
                i = restart


class PermGroup:
    """Permutation group with a base and strong generating set.

    Immutable after construction; safe to share read-only between threads
    and picklable for worker processes.
    """

    def __init__(self, degree: int, generators: Sequence[Permutation], levels: Sequence[_Level]):
        self.degree = degree
        self.generators: Tuple[Permutation, ...] = tuple(generators)
        self._levels: Tuple[_Level, ...] = tuple(levels)
        strong: List[Permutation] = []
        seen = set()
        for lv in self._levels:
            for s in lv.generators:
                if s not in seen:
                    seen.add(s)
                    strong.append(s)
        self.strong_generators: Tuple[Permutation, ...] = tuple(strong)
        self._order = 1
        for lv in self._levels:
            self._order *= len(lv.transversal)

    # ------------------------------------------------------------------
    # chain data
    # ------------------------------------------------------------------
    @property
    def base(self) -> Tuple[int, ...]:
        return tuple(lv.point for lv in self._levels)

    @property
    def basic_orbits(self) -> Tuple[Tuple[int, ...], ...]:
        return tuple(tuple(lv.transversal) for lv in self._levels)

    def transversal(self, level: int) -> Dict[int, Permutation]:
        return dict(self._levels[level].transversal)

    @property
    def order(self) -> int:
        return self._order

    def __len__(self) -> int:
        return self._order

    def is_trivial(self) -> bool:
        return self._order == 1

    def identity(self) -> Permutation:
        return Permutation.identity(self.degree)

    # ------------------------------------------------------------------
    # membership / elements
    # ------------------------------------------------------------------
    def contains(self, p: Permutation) -> bool:
        if p.degree != self.degree:
            raise DegreeMismatchError(f"degree {p.degree} permutation tested against degree {self.degree} group")
        residue, j = _sift(self._levels, p)
        return j == len(self._levels) and residue.is_identity()

    def __contains__(self, p: Permutation) -> bool:
        return self.contains(p)

    def elements(self) -> Iterator[Permutation]:
        """Every element exactly once, as products u_k * ... * u_0 of transversal elements."""
        if not self._levels:
            yield self.identity()
            return
        reps = [list(lv.transversal.values()) for lv in reversed(self._levels)]
        for combo in product(*reps):
            g = combo[0]
            for u in combo[1:]:
                g = g * u
            yield g

    def element_set(self) -> frozenset[Permutation]:
        return frozenset(self.elements())

    def is_subgroup_of(self, other: "PermGroup") -> bool:
        if other.degree != self.degree:
            return False
        return all(other.contains(g) for g in self.generators)

    def is_regular(self) -> bool:
        return self._order == self.degree and self.is_transitive()

    # ------------------------------------------------------------------
    # orbits
    # ------------------------------------------------------------------
    def orbit(self, point: int) -> Tuple[int, ...]:
        return tuple(sorted(_orbit_transversal(point, self.generators, self.degree)))

    def orbit_cells(self) -> List[Tuple[int, ...]]:
        """Orbits on all points, each sorted, cells ordered by minimum."""
        seen = [False] * self.degree
        cells = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cell = self.orbit(start)
            for x in cell:
                seen[x] = True
            cells.append(cell)
        return cells

    def is_transitive(self) -> bool:
        return self.degree == 0 or len(self.orbit(0)) == self.degree

    # ------------------------------------------------------------------
    # stabilisers
    # ------------------------------------------------------------------
    def pointwise_stabilizer(self, points: Sequence[int]) -> "PermGroup":
        points = [int(p) for p in points]
        if self.base[:len(points)] == tuple(points):
            levels = self._levels
        else:
            levels = _build_levels(self.degree, self.strong_generators, base_prefix=points)
        tail = [_Level(lv.point, list(lv.generators), dict(lv.transversal)) for lv in levels[len(points):]]
        gens = tail[0].generators if tail else []
        return PermGroup(self.degree, gens, tail)

    def point_stabilizer(self, point: int) -> "PermGroup":
        return self.pointwise_stabilizer([point])

    def setwise_stabilizes(self, cell: Iterable[int]) -> bool:
        cell_set = frozenset(cell)
        return all(g.image_of_set(cell_set) == cell_set for g in self.generators)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self._order}, generators={len(self.generators)})"


def _build_levels(degree: int, gens: Iterable[Permutation], base_prefix: Sequence[int] = ()) -> List[_Level]:
    builder = _ChainBuilder(degree, base_prefix)
    for g in gens:
        if not g.is_identity():
            builder.add(g)
    return builder.levels


def group_from_generators(degree: int, gens: Iterable[Permutation], base: Sequence[int] = ()) -> PermGroup:
    """Build a PermGroup by deterministic Schreier-Sims.

    Redundant generators (already members when they are added) are dropped,
    so ``generators`` of the result is a subsequence of ``gens``.
    """
    gens = list(gens)
    check_degrees(degree, gens)
    builder = _ChainBuilder(degree, base)
    kept = [g for g in gens if not g.is_identity() and builder.add(g)]
    group = PermGroup(degree, kept, builder.levels)
    logger.debug(f"Built group of degree {degree}: order {group.order}, base {group.base}")
    return group


def trivial_group(degree: int) -> PermGroup:
    return PermGroup(degree, [], [])


def symmetric_group(degree: int) -> PermGroup:
    if degree < 2:
        return trivial_group(degree)
    gens = [Permutation.from_cycles(degree, [[0, 1]])]
    if degree > 2:
        gens.append(Permutation.from_cycles(degree, [list(range(degree))]))
    return group_from_generators(degree, gens)
