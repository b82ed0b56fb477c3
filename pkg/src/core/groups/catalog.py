"""群目录: GroupSpec 解析与 make_group

Element ordering per kind (fixed so connection-set bitsets are reproducible):

- cyclic(n):    residues 0..n-1 ascending
- dihedral(2m): rotations r^0..r^{m-1}, then reflections s·r^0..s·r^{m-1}
- dicyclic(4m): a^0..a^{2m-1}, then x·a^0..x·a^{2m-1}  (x^2 = a^m, a^x = a^-1)
- abelian(n1,...,nk) and direct products: lexicographic tuples, first factor
  most significant
"""
from __future__ import annotations

import logging
from itertools import product as iter_product
from pathlib import Path
from typing import List, Literal, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from src.core.errors import GroupSpecError
from src.core.groups.finite_group import FiniteGroup

logger = logging.getLogger(__name__)

GroupKind = Literal["cyclic", "dihedral", "dicyclic", "abelian", "direct_product", "file"]

_ALIASES = {
    "trivial": "cyclic:1",
    "klein4": "abelian:2,2",
    "quaternion": "dicyclic:8",
}


class GroupSpec(BaseModel):
    """群规格"""
    kind: GroupKind = Field(..., description="group family")
    orders: Tuple[int, ...] = Field(default=(), description="order (cyclic/dihedral/dicyclic) or invariant factors (abelian)")
    factors: Tuple["GroupSpec", ...] = Field(default=(), description="factors of a direct product")
    path: Optional[str] = Field(default=None, description="group table file")

    model_config = {"frozen": True}

    @model_validator(mode="after")
    def _check_parameters(self) -> "GroupSpec":
        k = self.kind
        if k in ("cyclic", "dihedral", "dicyclic"):
            if len(self.orders) != 1:
                raise ValueError(f"{k} takes exactly one order")
            n = self.orders[0]
            if n < 1:
                raise ValueError(f"{k} order must be positive, got {n}")
            if k == "dihedral" and (n < 2 or n % 2):
                raise ValueError(f"dihedral order must be even and >= 2, got {n}")
            if k == "dicyclic" and (n < 4 or n % 4):
                raise ValueError(f"dicyclic order must be divisible by 4, got {n}")
        elif k == "abelian":
            if not self.orders or any(n < 1 for n in self.orders):
                raise ValueError("abelian needs positive invariant factors")
            for a, b in zip(self.orders, self.orders[1:]):
                if b % a:
                    raise ValueError(f"invariant factors must divide each other, got {self.orders}")
        elif k == "direct_product":
            if len(self.factors) < 2:
                raise ValueError("direct_product needs at least two factors")
        elif k == "file":
            if not self.path:
                raise ValueError("file spec needs a path")
        return self

    # ------------------------------------------------------------------
    # text form
    # ------------------------------------------------------------------
    @classmethod
    def parse(cls, text: str) -> "GroupSpec":
        raw = text.strip()
        raw = _ALIASES.get(raw, raw)
        kind, sep, rest = raw.partition(":")
        try:
            if kind == "product":
                parts = [p for p in rest.split("*") if p]
                return cls(kind="direct_product", factors=tuple(cls.parse(p) for p in parts))
            if kind == "file":
                return cls(kind="file", path=rest)
            if not sep or not rest:
                raise GroupSpecError(f"malformed group spec {text!r}")
            orders = tuple(int(x) for x in rest.split(","))
            return cls(kind=kind, orders=orders)
        except GroupSpecError:
            raise
        except ValueError as e:  # pydantic ValidationError is a ValueError
            raise GroupSpecError(f"invalid group spec {text!r}: {e}") from e

    @property
    def id(self) -> str:
        if self.kind == "direct_product":
            return "product:" + "*".join(f.id for f in self.factors)
        if self.kind == "file":
            return f"file:{self.path}"
        return f"{self.kind}:{','.join(map(str, self.orders))}"

    @property
    def display_kind(self) -> str:
        return "product" if self.kind == "direct_product" else self.kind


GroupSpec.model_rebuild()


# ----------------------------------------------------------------------
# family tables
# ----------------------------------------------------------------------
def cyclic_table(n: int) -> Tuple[List[List[int]], List[str]]:
    return [[(i + j) % n for j in range(n)] for i in range(n)], [str(i) for i in range(n)]


def dihedral_table(order: int) -> Tuple[List[List[int]], List[str]]:
    m = order // 2

    def decode(x: int) -> Tuple[int, int]:
        return (1, x - m) if x >= m else (0, x)

    table = []
    for x in range(order):
        a, i = decode(x)
        row = []
        for y in range(order):
            b, j = decode(y)
            # (s^a r^i)(s^b r^j) = s^{a+b} r^{(-1)^b i + j}
            k = ((-i if b else i) + j) % m
            row.append(((a + b) % 2) * m + k)
        table.append(row)
    names = [f"r^{i}" for i in range(m)] + [f"s r^{i}" for i in range(m)]
    return table, names


def dicyclic_table(order: int) -> Tuple[List[List[int]], List[str]]:
    m = order // 4
    two_m = 2 * m

    def decode(x: int) -> Tuple[int, int]:
        return (1, x - two_m) if x >= two_m else (0, x)

    table = []
    for x in range(order):
        e, i = decode(x)
        row = []
        for y in range(order):
            f, j = decode(y)
            # (x^e a^i)(x^f a^j) = x^{e+f} a^{(-1)^f i + j}, with x^2 = a^m
            k = (-i if f else i) + j
            if e + f == 2:
                k += m
                ef = 0
            else:
                ef = e + f
            row.append(ef * two_m + k % two_m)
        table.append(row)
    names = [f"a^{i}" for i in range(two_m)] + [f"x a^{i}" for i in range(two_m)]
    return table, names


def direct_product_table(groups: List[FiniteGroup]) -> Tuple[List[List[int]], List[str]]:
    sizes = [g.order for g in groups]
    tuples = list(iter_product(*(range(s) for s in sizes)))
    index = {t: i for i, t in enumerate(tuples)}
    table = []
    for a in tuples:
        row = []
        for b in tuples:
            row.append(index[tuple(g.mul(x, y) for g, x, y in zip(groups, a, b))])
        table.append(row)
    names = ["(" + ",".join(g.element_names[x] for g, x in zip(groups, t)) + ")" for t in tuples]
    return table, names


def make_group(spec: GroupSpec | str) -> FiniteGroup:
    """Build the FiniteGroup described by ``spec`` (validated on construction)."""
    if isinstance(spec, str):
        spec = GroupSpec.parse(spec)
    kind = spec.kind
    if kind == "cyclic":
        table, names = cyclic_table(spec.orders[0])
    elif kind == "dihedral":
        table, names = dihedral_table(spec.orders[0])
    elif kind == "dicyclic":
        table, names = dicyclic_table(spec.orders[0])
    elif kind == "abelian":
        table, names = direct_product_table([make_group(GroupSpec(kind="cyclic", orders=(n,))) for n in spec.orders])
    elif kind == "direct_product":
        table, names = direct_product_table([make_group(f) for f in spec.factors])
    elif kind == "file":
        path = Path(spec.path or "")
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise GroupSpecError(f"cannot read group file {path}: {e}") from e
        group = FiniteGroup.from_table_text(text, name=spec.id)
        logger.info(f"Loaded group of order {group.order} from {path}")
        return group
    else:  # pragma: no cover - Literal guards this
        raise GroupSpecError(f"unknown group kind {kind!r}")
    return FiniteGroup(table, element_names=names, name=spec.id)


def catalog(max_order: int = 16) -> List[GroupSpec]:
    """Built-in test corpus, ordered by (order, id)."""
    texts: List[str] = [f"cyclic:{n}" for n in range(1, max_order + 1)]
    texts += [f"dihedral:{n}" for n in range(6, max_order + 1, 2)]
    texts += [f"dicyclic:{n}" for n in range(8, max_order + 1, 4)]
    texts += [
        "abelian:2,2", "abelian:2,4", "abelian:2,2,2", "abelian:3,3", "abelian:2,6",
        "abelian:4,4", "abelian:2,2,4", "abelian:2,2,2,2", "abelian:2,8", "abelian:3,6",
        "product:cyclic:2*dihedral:6", "product:cyclic:2*dicyclic:8", "product:cyclic:3*dihedral:6",
        "product:cyclic:2*dihedral:8",
    ]
    specs = []
    for t in texts:
        spec = GroupSpec.parse(t)
        if spec_order(spec) <= max_order:
            specs.append(spec)
    specs.sort(key=lambda s: (spec_order(s), s.id))
    return specs


def spec_order(spec: GroupSpec) -> int:
    if spec.kind in ("cyclic", "dihedral", "dicyclic"):
        return spec.orders[0]
    if spec.kind == "abelian":
        out = 1
        for n in spec.orders:
            out *= n
        return out
    if spec.kind == "direct_product":
        out = 1
        for f in spec.factors:
            out *= spec_order(f)
        return out
    return make_group(spec).order
