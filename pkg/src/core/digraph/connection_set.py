"""连接集 (connection set): a subset of a group stored as an integer bitset.

Bit g is set iff element g (catalog index) is in S. The hex form is the
little-endian byte encoding of the bitset, so ``{1}`` over cyclic(3) is
``"02"``.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Tuple

from src.core.errors import DegreeMismatchError, PreconditionError
from src.core.perm.permutation import Permutation


@dataclass(frozen=True, order=True)
class ConnectionSet:
    r: int
    bits: int

    def __post_init__(self) -> None:
        if self.r < 0:
            raise PreconditionError(f"negative group order {self.r}")
        if not 0 <= self.bits < (1 << self.r):
            raise PreconditionError(f"bitset {self.bits:#x} does not fit {self.r} elements")

    @classmethod
    def empty(cls, r: int) -> "ConnectionSet":
        return cls(r, 0)

    @classmethod
    def full(cls, r: int) -> "ConnectionSet":
        return cls(r, (1 << r) - 1)

    @classmethod
    def from_elements(cls, r: int, elements: Iterable[int]) -> "ConnectionSet":
        bits = 0
        for g in elements:
            g = int(g)
            if not 0 <= g < r:
                raise PreconditionError(f"element {g} out of range for order {r}")
            bits |= 1 << g
        return cls(r, bits)

    @classmethod
    def from_hex(cls, r: int, text: str) -> "ConnectionSet":
        raw = text.strip().lower()
        if raw.startswith("0x"):
            raw = raw[2:]
        if not raw:
            return cls(r, 0)
        if len(raw) % 2:
            raise PreconditionError(f"hex connection set {text!r} must have an even number of digits")
        try:
            bits = int.from_bytes(bytes.fromhex(raw), "little")
        except ValueError as e:
            raise PreconditionError(f"malformed hex connection set {text!r}") from e
        return cls(r, bits)

    def to_hex(self) -> str:
        width = max(1, (self.r + 7) // 8)
        return self.bits.to_bytes(width, "little").hex()

    # ------------------------------------------------------------------
    # set interface
    # ------------------------------------------------------------------
    @property
    def elements(self) -> Tuple[int, ...]:
        return tuple(g for g in range(self.r) if self.bits >> g & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.elements)

    def __len__(self) -> int:
        return bin(self.bits).count("1")

    def __contains__(self, g: object) -> bool:
        return isinstance(g, int) and 0 <= g < self.r and bool(self.bits >> g & 1)

    def rank(self, g: int) -> int:
        """Number of members smaller than g."""
        return bin(self.bits & ((1 << g) - 1)).count("1")

    def select(self, k: int) -> int:
        """The k-th smallest member (0-based)."""
        elems = self.elements
        if not 0 <= k < len(elems):
            raise IndexError(f"select({k}) on a set of size {len(elems)}")
        return elems[k]

    def complement(self) -> "ConnectionSet":
        return ConnectionSet(self.r, ((1 << self.r) - 1) ^ self.bits)

    # ------------------------------------------------------------------
    # group actions
    # ------------------------------------------------------------------
    def image(self, phi: Permutation) -> "ConnectionSet":
        """S^phi for a group automorphism phi given on element indices."""
        if phi.degree != self.r:
            raise DegreeMismatchError(f"automorphism of degree {phi.degree} applied to a set over order {self.r}")
        return ConnectionSet(self.r, phi.image_of_mask(self.bits))

    def translate(self, table, g: int) -> "ConnectionSet":
        """S·g, using the multiplication table ``table`` (numpy or nested lists)."""
        if len(table) != self.r:
            raise DegreeMismatchError(f"table of order {len(table)} for a set over order {self.r}")
        return ConnectionSet.from_elements(self.r, (int(table[s][g]) for s in self.elements))

    def __str__(self) -> str:
        return "{" + ",".join(map(str, self.elements)) + "}"
