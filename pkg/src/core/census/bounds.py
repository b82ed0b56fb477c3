"""计数界 (log2 of the explicit counting bounds)

Every evaluator returns log2 of the bound. ``bound_terms`` splits that value
into an exact rational part (integer, rational and power-of-two logarithm
terms) and the remaining floating-point part.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, Optional, Union

from pydantic import BaseModel, Field

from src.config import settings
from src.core.errors import PreconditionError

Number = Union[Fraction, float]


class BoundKind(str, Enum):
    NON_DRR = "non_drr"
    NORMALISER_FIXED_ORBIT = "normaliser_fixed_orbit"
    FIXED_ORBIT = "fixed_orbit"
    LARGE_NORMAL_SUBGROUP = "large_normal_subgroup"
    SMALL_NORMAL_SUBGROUP = "small_normal_subgroup"
    SMALL_STABILISER = "small_stabiliser"
    LARGE_CORE = "large_core"
    IMPRIMITIVE = "imprimitive"


_NEEDS_N = {
    BoundKind.NORMALISER_FIXED_ORBIT,
    BoundKind.FIXED_ORBIT,
    BoundKind.LARGE_NORMAL_SUBGROUP,
    BoundKind.SMALL_NORMAL_SUBGROUP,
}


class BoundParams(BaseModel):
    """界参数"""
    r: int = Field(..., ge=2, description="group order")
    n: Optional[int] = Field(default=None, ge=1, description="order of the normal subgroup")
    b: float = Field(default_factory=lambda: settings.bound_b, ge=0, description="absolute constant b (0 allowed)")
    epsilon: float = Field(default_factory=lambda: settings.bound_epsilon, gt=0, lt=0.5, description="epsilon")

    model_config = {"frozen": True}


@dataclass(frozen=True)
class BoundTerms:
    exact: Fraction
    inexact: float

    @property
    def total(self) -> float:
        return float(self.exact) + self.inexact


def exact_log2(x: Union[int, Fraction]) -> Optional[Fraction]:
    """log2(x) as a Fraction when x is an integral power of two (or its reciprocal)."""
    x = Fraction(x)
    if x <= 0:
        return None
    for num, den, sign in ((x.numerator, x.denominator, 1), (x.denominator, x.numerator, -1)):
        if den == 1 and num & (num - 1) == 0:
            return Fraction(sign * (num.bit_length() - 1))
    return None


class _Accumulator:
    def __init__(self) -> None:
        self.exact = Fraction(0)
        self.inexact = 0.0

    def add(self, term: Number) -> None:
        if isinstance(term, Fraction):
            self.exact += term
        else:
            self.inexact += float(term)

    def log2(self, x: Union[int, Fraction], coeff: Number = Fraction(1)) -> None:
        """Add coeff * log2(x), exactly when both factors are rational."""
        lg = exact_log2(x)
        if lg is not None and isinstance(coeff, Fraction):
            self.exact += coeff * lg
        else:
            self.inexact += float(coeff) * math.log2(x)

    def result(self) -> BoundTerms:
        return BoundTerms(self.exact, self.inexact)


def _log2_squared_plus_log2(acc: _Accumulator, x: int) -> None:
    lg = exact_log2(x)
    if lg is not None:
        acc.add(lg * lg + lg)
    else:
        v = math.log2(x)
        acc.add(v * v + v)


def _drr_penalty(p: BoundParams) -> Number:
    """b r^0.499 / (4 (log2 r)^3)"""
    if p.b == 0:
        return Fraction(0)
    return p.b * p.r ** 0.499 / (4 * math.log2(p.r) ** 3)


def _thirds(p: BoundParams) -> Fraction:
    """(r/n - 2) / 3"""
    return (Fraction(p.r, p.n) - 2) / 3


def _non_drr(p: BoundParams, acc: _Accumulator) -> None:
    acc.add(Fraction(p.r + 2))
    acc.add(-_drr_penalty(p))


def _imprimitive(p: BoundParams, acc: _Accumulator) -> None:
    acc.add(Fraction(p.r + 1))
    acc.add(-_drr_penalty(p))


def _normaliser_fixed_orbit(p: BoundParams, acc: _Accumulator) -> None:
    acc.add(Fraction(p.r) - Fraction(p.n, 4))
    _log2_squared_plus_log2(acc, p.n)


def _fixed_orbit(p: BoundParams, acc: _Accumulator) -> None:
    acc.add(Fraction(p.r))
    acc.log2(math.comb(p.n, 2))
    acc.log2(Fraction(3, 4), _thirds(p))


def _large_normal_subgroup(p: BoundParams, acc: _Accumulator) -> None:
    acc.add(Fraction(p.r) - Fraction(p.n, 4))
    lg = exact_log2(p.n)
    acc.add(lg * lg if lg is not None else math.log2(p.n) ** 2)
    _log2_squared_plus_log2(acc, p.r)


def _small_normal_subgroup(p: BoundParams, acc: _Accumulator) -> None:
    acc.add(Fraction(p.r - 1))
    acc.log2(Fraction(4, 3), -_thirds(p))
    _log2_squared_plus_log2(acc, p.r)
    acc.log2(p.n)


def _small_stabiliser(p: BoundParams, acc: _Accumulator) -> None:
    acc.add(Fraction(3 * p.r, 4))
    acc.add(float(p.r) ** (1 - p.epsilon))


def _large_core(p: BoundParams, acc: _Accumulator) -> None:
    acc.add(Fraction(p.r))
    lg = exact_log2(p.r)
    log_r = float(lg) if lg is not None else math.log2(p.r)
    acc.add(-(p.r / (4 * log_r)) * math.log2(math.e))
    if lg is not None:
        acc.log2(4 * lg, Fraction(-1))
    else:
        acc.add(-math.log2(4 * log_r))
    _log2_squared_plus_log2(acc, p.r)


_EVALUATORS: Dict[BoundKind, Callable[[BoundParams, _Accumulator], None]] = {
    BoundKind.NON_DRR: _non_drr,
    BoundKind.NORMALISER_FIXED_ORBIT: _normaliser_fixed_orbit,
    BoundKind.FIXED_ORBIT: _fixed_orbit,
    BoundKind.LARGE_NORMAL_SUBGROUP: _large_normal_subgroup,
    BoundKind.SMALL_NORMAL_SUBGROUP: _small_normal_subgroup,
    BoundKind.SMALL_STABILISER: _small_stabiliser,
    BoundKind.LARGE_CORE: _large_core,
    BoundKind.IMPRIMITIVE: _imprimitive,
}


def check_params(kind: BoundKind, params: BoundParams) -> None:
    if kind in _NEEDS_N:
        if params.n is None:
            raise PreconditionError(f"bound {kind.value} needs n")
        if params.n > params.r:
            raise PreconditionError(f"n = {params.n} exceeds r = {params.r}")
    if kind is BoundKind.FIXED_ORBIT and params.n < 2:
        raise PreconditionError(f"bound {kind.value} needs n >= 2, got {params.n}")
    if kind is BoundKind.LARGE_NORMAL_SUBGROUP and params.n < 71:
        raise PreconditionError(f"bound {kind.value} needs n >= 71, got {params.n}")


def bound_terms(kind: Union[BoundKind, str], params: BoundParams) -> BoundTerms:
    try:
        kind = BoundKind(kind)
    except ValueError as e:
        raise PreconditionError(
            f"unknown bound kind {kind!r}, expected one of {', '.join(k.value for k in BoundKind)}"
        ) from e
    check_params(kind, params)
    acc = _Accumulator()
    _EVALUATORS[kind](params, acc)
    return acc.result()


def bound_eval(kind: Union[BoundKind, str], params: BoundParams) -> float:
    """log2 of the bound of the given kind."""
    return bound_terms(kind, params).total
