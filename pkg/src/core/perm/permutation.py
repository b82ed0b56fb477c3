"""置换 (Permutation)

Points act on the right: ``(p * q)(x) == q(p(x))``, i.e. ``x^{pq} = (x^p)^q``.
Text form is cycle notation such as ``"(0 1 2)(3 4)"``; the identity prints
as ``"()"``.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, List, Sequence, Tuple

from src.core.errors import DegreeMismatchError

_CYCLE_RE = re.compile(r"\(([^()]*)\)")


@dataclass(frozen=True)
class Permutation:
    """A bijection of ``{0..degree-1}`` stored as its image tuple."""

    images: Tuple[int, ...]

    def __post_init__(self) -> None:
        if sorted(self.images) != list(range(len(self.images))):
            raise ValueError(f"not a permutation: {self.images!r}")

    # ------------------------------------------------------------------
    # constructors
    # ------------------------------------------------------------------
    @classmethod
    def _unchecked(cls, images: Tuple[int, ...]) -> "Permutation":
        p = object.__new__(cls)
        object.__setattr__(p, "images", images)
        return p

    @classmethod
    def identity(cls, degree: int) -> "Permutation":
        return cls._unchecked(tuple(range(degree)))

    @classmethod
    def from_images(cls, images: Iterable[int]) -> "Permutation":
        return cls(tuple(int(i) for i in images))

    @classmethod
    def from_cycles(cls, degree: int, cycles: Iterable[Sequence[int]]) -> "Permutation":
        images = list(range(degree))
        seen: set[int] = set()
        for cycle in cycles:
            cycle = [int(x) for x in cycle]
            for x in cycle:
                if x < 0 or x >= degree:
                    raise ValueError(f"point {x} out of range for degree {degree}")
                if x in seen:
                    raise ValueError(f"point {x} appears in two cycles")
                seen.add(x)
            for a, b in zip(cycle, cycle[1:] + cycle[:1]):
                images[a] = b
        return cls(tuple(images))

    @classmethod
    def parse(cls, text: str, degree: int | None = None) -> "Permutation":
        """Parse cycle notation; degree defaults to the largest point + 1."""
        stripped = text.strip()
        if _CYCLE_RE.sub("", stripped).strip():
            raise ValueError(f"could not parse permutation {text!r}")
        cycles: List[List[int]] = []
        for body in _CYCLE_RE.findall(stripped):
            parts = [x for x in re.split(r"[\s,]+", body.strip()) if x]
            if parts:
                cycles.append([int(x) for x in parts])
        largest = max((max(c) for c in cycles), default=-1)
        if degree is None:
            degree = largest + 1
        elif largest >= degree:
            raise ValueError(f"point {largest} out of range for degree {degree}")
        return cls.from_cycles(degree, cycles)

    # ------------------------------------------------------------------
    # basic algebra
    # ------------------------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, point: int) -> int:
        return self.images[point]

    def __getitem__(self, point: int) -> int:
        return self.images[point]

    def __mul__(self, other: "Permutation") -> "Permutation":
        if other.degree != self.degree:
            raise DegreeMismatchError(f"cannot compose degree {self.degree} with degree {other.degree}")
        q = other.images
        return Permutation._unchecked(tuple([q[i] for i in self.images]))

    def __invert__(self) -> "Permutation":
        return self.inverse()

    def __pow__(self, exponent: int) -> "Permutation":
        if exponent < 0:
            return self.inverse() ** (-exponent)
        result = Permutation.identity(self.degree)
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def inverse(self) -> "Permutation":
        inv = [0] * self.degree
        for i, v in enumerate(self.images):
            inv[v] = i
        return Permutation._unchecked(tuple(inv))

    def conjugate(self, by: "Permutation") -> "Permutation":
        """``by^-1 * self * by`` (relabel the points of self by ``by``)."""
        return by.inverse() * self * by

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.images))

    # ------------------------------------------------------------------
    # cycle structure
    # ------------------------------------------------------------------
    @cached_property
    def cycles(self) -> Tuple[Tuple[int, ...], ...]:
        """All cycles including fixed points, each starting at its minimum."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            j = self.images[start]
            while j != start:
                seen[j] = True
                cycle.append(j)
                j = self.images[j]
            out.append(tuple(cycle))
        return tuple(out)

    @property
    def cycle_count(self) -> int:
        return len(self.cycles)

    @property
    def fixed_points(self) -> Tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.images) if i == v)

    @property
    def support(self) -> Tuple[int, ...]:
        return tuple(i for i, v in enumerate(self.images) if i != v)

    @property
    def order(self) -> int:
        return math.lcm(*(len(c) for c in self.cycles)) if self.degree else 1

    def first_moved_point(self) -> int | None:
        for i, v in enumerate(self.images):
            if i != v:
                return i
        return None

    def image_of_set(self, points: Iterable[int]) -> frozenset[int]:
        return frozenset(self.images[x] for x in points)

    def image_of_mask(self, mask: int) -> int:
        """Image of a point set encoded as an integer bitmask."""
        out = 0
        i = 0
        while mask:
            if mask & 1:
                out |= 1 << self.images[i]
            mask >>= 1
            i += 1
        return out

    # ------------------------------------------------------------------
    # text / json
    # ------------------------------------------------------------------
    def cycle_notation(self) -> str:
        parts = ["(" + " ".join(map(str, c)) + ")" for c in self.cycles if len(c) > 1]
        return "".join(parts) if parts else "()"

    def to_json(self) -> List[int]:
        return list(self.images)

    @classmethod
    def from_json(cls, data: Sequence[int]) -> "Permutation":
        return cls.from_images(data)

    def __str__(self) -> str:
        return self.cycle_notation()

    def __repr__(self) -> str:
        return f"Permutation({self.cycle_notation()!r}, degree={self.degree})"


def compose(p: Permutation, q: Permutation) -> Permutation:
    """Apply p, then q."""
    return p * q


def inverse(p: Permutation) -> Permutation:
    return p.inverse()


def check_degrees(degree: int, perms: Iterable[Permutation]) -> None:
    for p in perms:
        if p.degree != degree:
            raise DegreeMismatchError(f"expected degree {degree}, got {p.degree} for {p}")
