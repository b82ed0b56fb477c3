"""普查记录与汇总 (census records, tallies and summaries)"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, Field

from src.core.digraph.connection_set import ConnectionSet


class Classification(str, Enum):
    """Cayley 有向图分类"""
    DRR = "DRR"                        # Aut = R
    NORMAL_NON_DRR = "NORMAL_NON_DRR"  # R ⊴ Aut, Aut > R
    NON_NORMAL = "NON_NORMAL"          # R not normal in Aut


CSV_HEADER = ("subset_hex", "aut_order", "class", "orbit_size")


@dataclass(frozen=True)
class CensusRecord:
    subset: ConnectionSet
    aut_order: int
    classification: Classification
    orbit_size: int = 1

    def csv_row(self) -> List[str]:
        return [self.subset.to_hex(), str(self.aut_order), self.classification.value, str(self.orbit_size)]

    def to_json(self) -> Dict[str, Any]:
        return dict(zip(CSV_HEADER, [self.subset.to_hex(), self.aut_order, self.classification.value, self.orbit_size]))


@dataclass
class Tallies:
    """Orbit-weighted counts per classification; merging is associative and commutative."""

    counts: Dict[Classification, int] = field(default_factory=lambda: {c: 0 for c in Classification})

    def add(self, record: CensusRecord) -> None:
        self.counts[record.classification] += record.orbit_size

    def __add__(self, other: "Tallies") -> "Tallies":
        return Tallies({c: self.counts[c] + other.counts[c] for c in Classification})

    @property
    def total(self) -> int:
        return sum(self.counts.values())

    def to_json(self) -> Dict[str, int]:
        return {c.value: self.counts[c] for c in Classification}

    @classmethod
    def from_json(cls, data: Dict[str, int]) -> "Tallies":
        return cls({c: int(data.get(c.value, 0)) for c in Classification})


def format_fraction(p: Fraction) -> str:
    return f"{p.numerator}/{p.denominator}"


def format_decimal(p: Fraction | float) -> str:
    return f"{float(p):.6f}"


class CensusSummary(BaseModel):
    """普查汇总 (deterministic; wall time is kept out of the JSON form)"""
    group_id: str = Field(..., description="group spec id")
    r: int = Field(..., description="group order")
    mode: Literal["exact", "sampled", "unlabelled"] = Field(..., description="census mode")
    reduce_by_aut: bool = Field(default=False, description="one representative per Aut(R)-orbit")
    counts: Dict[str, int] = Field(..., description="count per classification")
    total: int = Field(..., description="subsets (or isomorphism classes) considered")
    drr_proportion: str = Field(..., description="DRR proportion as an exact fraction")
    drr_proportion_decimal: str = Field(..., description="DRR proportion, 6 decimals")
    normal_proportion: Optional[str] = Field(default=None, description="normal (DRR included) proportion as a fraction")
    normal_proportion_decimal: Optional[str] = Field(default=None, description="normal proportion, 6 decimals")
    seed: Optional[int] = Field(default=None, description="PCG64 seed (sampled mode)")
    samples: Optional[int] = Field(default=None, description="sample count (sampled mode)")
    half_width_95: Optional[str] = Field(default=None, description="95% binomial half-width, 6 decimals")
    aut_r_order: Optional[int] = Field(default=None, description="|Aut(R)| (unlabelled mode)")
    drr_subset_count: Optional[int] = Field(default=None, description="labelled DRR connection sets (unlabelled mode)")
    wall_time_s: Optional[float] = Field(default=None, exclude=True, description="wall time, logged only")

    def drr_fraction(self) -> Fraction:
        num, den = self.drr_proportion.split("/")
        return Fraction(int(num), int(den))

    def to_json(self) -> str:
        return self.model_dump_json(indent=2, exclude_none=True)


def summary_from_tallies(
    group_id: str,
    r: int,
    mode: str,
    tallies: Tallies,
    **extra: Any,
) -> CensusSummary:
    total = tallies.total
    drr = tallies.counts[Classification.DRR]
    normal = drr + tallies.counts[Classification.NORMAL_NON_DRR]
    p = Fraction(drr, total) if total else Fraction(0)
    q = Fraction(normal, total) if total else Fraction(0)
    return CensusSummary(
        group_id=group_id,
        r=r,
        mode=mode,
        counts=tallies.to_json(),
        total=total,
        drr_proportion=format_fraction(p),
        drr_proportion_decimal=format_decimal(p),
        normal_proportion=format_fraction(q),
        normal_proportion_decimal=format_decimal(q),
        **extra,
    )
