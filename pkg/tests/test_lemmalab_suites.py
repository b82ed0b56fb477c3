"""Tests for the verify suites at small scale"""
import inspect
import json

import pytest

from src.core.lemmalab import SUITES, VerifyReport, run_suites
from src.config import settings
from src.core.lemmalab import suite as suite_module


@pytest.mark.parametrize(
    "fn, kwargs",
    [
        (suite_module.verify_fixed_subsets, {"max_order": 6}),
        (suite_module.verify_invariant_digraphs, {"max_order": 4}),
        (suite_module.verify_partition_fixing, {"max_order": 4}),
        (suite_module.verify_sigma, {"instances": 40, "max_order": 8}),
        (suite_module.verify_phi, {"max_order": 4}),
        (suite_module.verify_parity, {"max_bits": 8, "max_order": 6}),
        (suite_module.verify_quotients, {"instances": 20, "max_order": 8, "kernel_max_order": 6}),
        (suite_module.verify_unlabelled, {"max_order": 4}),
        (suite_module.verify_orbit_constancy, {"max_order": 4}),
        (suite_module.verify_census, {"max_order": 4}),
        (suite_module.verify_bounds, {}),
    ],
)
def test_suite_passes(fn, kwargs):
    report = fn(**kwargs)
    assert isinstance(report, VerifyReport)
    assert report.instances > 0
    assert report.failures == 0, report.messages
    assert report.passed


def test_every_suite_is_registered():
    assert set(SUITES) == {
        "fixed_subsets", "invariant_digraphs", "partition_fixing", "sigma", "phi", "parity",
        "quotients", "unlabelled", "orbit_constancy", "census", "drr_trend", "bounds",
    }


def test_failures_are_counted_not_raised(monkeypatch):
    monkeypatch.setattr(suite_module, "bound_eval", lambda kind, params: 0.0)
    report = suite_module.verify_bounds()
    assert not report.passed
    assert report.instances == 3
    assert report.failures == 3
    assert len(report.messages) == 3


def test_wall_time_is_left_out_of_the_json():
    report = suite_module.verify_bounds()
    assert report.wall_time_s is not None
    data = json.loads(report.model_dump_json())
    assert "wall_time_s" not in data
    assert data["name"] == "bounds"


def test_run_suites_by_name():
    reports = run_suites("bounds")
    assert [r.name for r in reports] == ["bounds"]
    with pytest.raises(ValueError):
        run_suites("nope")


def default_of(fn, name):
    return inspect.signature(fn).parameters[name].default


def test_default_scales():
    assert default_of(suite_module.verify_partition_fixing, "max_order") == 8
    assert default_of(suite_module.verify_census, "max_order") == 10
    assert default_of(suite_module.verify_unlabelled, "max_order") == 10
    assert default_of(suite_module.verify_quotients, "instances") == 200
    assert default_of(suite_module.verify_quotients, "max_order") == 16
    assert default_of(suite_module.verify_quotients, "kernel_max_order") == 10
    assert list(default_of(suite_module.verify_drr_trend, "orders")) == list(range(5, 15))


def test_quotient_kernel_identity_up_to_order_ten():
    report = suite_module.verify_quotients(instances=30, max_order=10, kernel_max_order=10, seed=3)
    assert report.failures == 0, report.messages


class TestDrrTrend:
    def test_pins_then_compares(self, tmp_path):
        fixture = tmp_path / "trend.json"
        first = suite_module.verify_drr_trend(orders=[3, 5], fixture=fixture)
        assert first.passed, first.messages
        assert json.loads(fixture.read_text(encoding="utf-8")) == {"3": "1/2", "5": "3/4"}

        second = suite_module.verify_drr_trend(orders=[3, 5], fixture=fixture)
        assert second.passed
        assert second.instances == 3

    def test_tampered_fixture_fails(self, tmp_path):
        fixture = tmp_path / "trend.json"
        fixture.write_text(json.dumps({"3": "1/2", "5": "1/4"}), encoding="utf-8")
        report = suite_module.verify_drr_trend(orders=[3, 5], fixture=fixture)
        assert not report.passed
        assert report.failures == 1
        assert "pinned 1/4" in report.messages[0]

    def test_falling_proportion_fails_and_pins_nothing(self, tmp_path):
        fixture = tmp_path / "trend.json"
        report = suite_module.verify_drr_trend(orders=[5, 3], fixture=fixture)
        assert report.failures == 1
        assert not fixture.exists()

    def test_checked_in_fixture(self):
        pinned = json.loads((settings.fixtures_dir / suite_module.TREND_FIXTURE).read_text(encoding="utf-8"))
        assert pinned["5"] == "3/4"
