"""Tests for the counting-bound evaluators"""
import math
from fractions import Fraction

import pytest
from pydantic import ValidationError

from src.core.census import BoundKind, BoundParams, bound_eval, bound_terms, exact_log2
from src.core.errors import PreconditionError


def test_non_drr_with_zero_constant():
    terms = bound_terms("non_drr", BoundParams(r=1024, b=0))
    assert terms.exact == 1026
    assert terms.inexact == 0.0
    assert bound_eval(BoundKind.NON_DRR, BoundParams(r=1024, b=0)) == 1026


def test_non_drr_default_constant():
    r = 1024
    expected = r - r ** 0.499 / (4 * 10 ** 3) + 2
    assert bound_eval("non_drr", BoundParams(r=r)) == pytest.approx(expected, rel=1e-9)


def test_imprimitive_is_one_below_non_drr():
    p = BoundParams(r=300, b=1.5)
    assert bound_eval("imprimitive", p) == pytest.approx(bound_eval("non_drr", p) - 1, rel=1e-12)


def test_normaliser_fixed_orbit_spot_value_is_exact():
    terms = bound_terms("normaliser_fixed_orbit", BoundParams(r=16, n=4))
    assert terms.exact == Fraction(21)
    assert terms.inexact == 0.0


def test_small_stabiliser_spot_value():
    value = bound_eval("small_stabiliser", BoundParams(r=1024, epsilon=0.001))
    assert value == pytest.approx(768 + 1024 ** 0.999, rel=1e-9)


def test_fixed_orbit():
    terms = bound_terms("fixed_orbit", BoundParams(r=8, n=2))
    assert terms.exact == 8
    assert terms.total == pytest.approx(8 + (2 / 3) * math.log2(0.75), rel=1e-12)


def test_small_normal_subgroup():
    r, n = 64, 4
    expected = r - ((r / n - 2) / 3) * math.log2(4 / 3) + math.log2(r) ** 2 + math.log2(r) + math.log2(n) - 1
    assert bound_eval("small_normal_subgroup", BoundParams(r=r, n=n)) == pytest.approx(expected, rel=1e-12)


def test_large_normal_subgroup():
    r, n = 1024, 128
    expected = r - n / 4 + math.log2(n) ** 2 + math.log2(r) ** 2 + math.log2(r)
    terms = bound_terms("large_normal_subgroup", BoundParams(r=r, n=n))
    assert terms.inexact == 0.0
    assert float(terms.exact) == pytest.approx(expected, rel=1e-12)


def test_large_core():
    terms = bound_terms("large_core", BoundParams(r=16))
    assert terms.exact == 32
    assert terms.total == pytest.approx(32 - math.log2(math.e), rel=1e-12)


@pytest.mark.parametrize(
    "kind, params",
    [
        ("normaliser_fixed_orbit", BoundParams(r=16)),
        ("fixed_orbit", BoundParams(r=16, n=1)),
        ("large_normal_subgroup", BoundParams(r=1024, n=64)),
        ("small_normal_subgroup", BoundParams(r=8, n=16)),
        ("theorem", BoundParams(r=8)),
    ],
)
def test_invalid_parameters_for_kind(kind, params):
    with pytest.raises(PreconditionError):
        bound_eval(kind, params)


def test_params_validation():
    with pytest.raises(ValidationError):
        BoundParams(r=1)
    with pytest.raises(ValidationError):
        BoundParams(r=8, epsilon=0.5)
    with pytest.raises(ValidationError):
        BoundParams(r=8, b=-1)


def test_exact_log2():
    assert exact_log2(1024) == 10
    assert exact_log2(Fraction(1, 4)) == -2
    assert exact_log2(1) == 0
    assert exact_log2(6) is None
    assert exact_log2(Fraction(3, 4)) is None
