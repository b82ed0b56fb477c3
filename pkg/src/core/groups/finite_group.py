"""有限群 (乘法表表示)

Elements are indices 0..r-1, element 0 is the identity and ``table[g, h]``
holds the index of ``g·h``.
"""
from __future__ import annotations

import logging
from functools import cached_property
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.core.errors import GroupSpecError

logger = logging.getLogger(__name__)

_EXHAUSTIVE_ASSOCIATIVITY_MAX = 64
_RANDOM_TRIPLES = 10**5


class FiniteGroup:
    """A finite group given by its multiplication table; immutable."""

    def __init__(
        self,
        table: Sequence[Sequence[int]] | np.ndarray,
        element_names: Optional[Sequence[str]] = None,
        name: str = "",
        validate: bool = True,
    ):
        arr = np.array(table, dtype=np.int64)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] == 0:
            raise GroupSpecError(f"multiplication table must be a non-empty square, got shape {arr.shape}")
        arr.setflags(write=False)
        self.table = arr
        self.order = int(arr.shape[0])
        self.identity = 0
        self.name = name or f"table:{self.order}"
        names = list(element_names) if element_names is not None else [str(i) for i in range(self.order)]
        if len(names) != self.order:
            raise GroupSpecError(f"{len(names)} element names for a group of order {self.order}")
        self.element_names: Tuple[str, ...] = tuple(names)
        if validate:
            self.validate()

    # ------------------------------------------------------------------
    # validation
    # ------------------------------------------------------------------
    def validate(self) -> None:
        t = self.table
        r = self.order
        if t.min() < 0 or t.max() >= r:
            raise GroupSpecError("table entries out of range")
        expected = np.arange(r)
        if not (np.array_equal(t[0], expected) and np.array_equal(t[:, 0], expected)):
            raise GroupSpecError("row and column 0 must be the identity row/column")
        for row in t:
            if len(set(row.tolist())) != r:
                raise GroupSpecError("table is not a Latin square (repeated entry in a row)")
        for col in t.T:
            if len(set(col.tolist())) != r:
                raise GroupSpecError("table is not a Latin square (repeated entry in a column)")
        if r <= _EXHAUSTIVE_ASSOCIATIVITY_MAX:
            # lhs[a, b, c] = (ab)c, rhs[a, b, c] = a(bc)
            lhs = t[t]
            rhs = t[:, t]
            if not np.array_equal(lhs, rhs):
                raise GroupSpecError("table is not associative")
        else:
            rng = np.random.default_rng(r)
            a, b, c = rng.integers(0, r, size=(3, _RANDOM_TRIPLES))
            if not np.array_equal(t[t[a, b], c], t[a, t[b, c]]):
                raise GroupSpecError("table is not associative (random triple check)")
        # Latin square with an identity: every element has a two-sided inverse
        if not np.all(t[np.arange(r), self.inverses] == 0):
            raise GroupSpecError("some element has no inverse")

    # ------------------------------------------------------------------
    # arithmetic
    # ------------------------------------------------------------------
    def mul(self, g: int, h: int) -> int:
        return int(self.table[g, h])

    @cached_property
    def inverses(self) -> np.ndarray:
        inv = np.argmin(self.table, axis=1)  # the unique column holding 0 in each row
        inv.setflags(write=False)
        return inv

    def inv(self, g: int) -> int:
        return int(self.inverses[g])

    def power(self, g: int, k: int) -> int:
        if k < 0:
            g, k = self.inv(g), -k
        out = 0
        for _ in range(k):
            out = self.mul(out, g)
        return out

    def conj(self, x: int, g: int) -> int:
        """x^g = g^-1 x g"""
        return self.mul(self.mul(self.inv(g), x), g)

    @cached_property
    def element_orders(self) -> Tuple[int, ...]:
        orders = []
        for g in range(self.order):
            k, x = 1, g
            while x != 0:
                x = self.mul(x, g)
                k += 1
            orders.append(k)
        return tuple(orders)

    def element_order(self, g: int) -> int:
        return self.element_orders[g]

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.table, self.table.T))

    # ------------------------------------------------------------------
    # subsets and subgroups
    # ------------------------------------------------------------------
    def generated_subgroup(self, gens: Iterable[int]) -> Tuple[int, ...]:
        elems = {0}
        frontier = [0]
        gens = [int(g) for g in gens]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = self.mul(x, g)
                    if y not in elems:
                        elems.add(y)
                        nxt.append(y)
            frontier = nxt
        return tuple(sorted(elems))

    def is_subgroup(self, subset: Iterable[int]) -> bool:
        s = set(int(x) for x in subset)
        if 0 not in s:
            return False
        return all(self.mul(a, b) in s for a in s for b in s)

    def is_normal_subset(self, subset: Iterable[int]) -> bool:
        s = set(int(x) for x in subset)
        if not self.is_subgroup(s):
            return False
        return all(self.conj(x, g) in s for x in s for g in range(self.order))

    def left_coset(self, g: int, subset: Iterable[int]) -> Tuple[int, ...]:
        return tuple(sorted(self.mul(g, n) for n in subset))

    def cosets(self, subgroup: Iterable[int]) -> List[Tuple[int, ...]]:
        """Left cosets gN, sorted by minimum element (coset of the identity first)."""
        sub = tuple(sorted(int(x) for x in subgroup))
        seen = [False] * self.order
        out = []
        for g in range(self.order):
            if seen[g]:
                continue
            coset = self.left_coset(g, sub)
            for x in coset:
                seen[x] = True
            out.append(coset)
        return out

    # ------------------------------------------------------------------
    # text form
    # ------------------------------------------------------------------
    def to_table_text(self) -> str:
        lines = [f"order {self.order}"]
        lines.extend(" ".join(str(int(x)) for x in row) for row in self.table)
        return "\n".join(lines) + "\n"

    @classmethod
    def from_table_text(cls, text: str, name: str = "") -> "FiniteGroup":
        lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.strip().startswith("#")]
        if not lines:
            raise GroupSpecError("empty group file")
        header = lines[0].split()
        if len(header) != 2 or header[0] != "order":
            raise GroupSpecError(f"bad header line {lines[0]!r}, expected 'order r'")
        try:
            r = int(header[1])
        except ValueError as e:
            raise GroupSpecError(f"bad order in header: {header[1]!r}") from e
        rows = lines[1:]
        if len(rows) != r:
            raise GroupSpecError(f"expected {r} table rows, found {len(rows)}")
        try:
            table = [[int(x) for x in row.split()] for row in rows]
        except ValueError as e:
            raise GroupSpecError(f"non-integer table entry: {e}") from e
        if any(len(row) != r for row in table):
            raise GroupSpecError(f"every table row needs {r} entries")
        return cls(table, name=name)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, FiniteGroup) and np.array_equal(self.table, other.table)

    def __hash__(self) -> int:
        return hash(self.table.tobytes())

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name!r}, order={self.order})"
