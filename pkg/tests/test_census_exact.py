"""Tests for classification, exact/sampled/unlabelled censuses and checkpoints"""
import json

import pytest

from src.core.autgrp import brute_force_automorphisms, canonical_form
from src.core.census import (
    CSV_HEADER,
    CensusRecord,
    Classification,
    Tallies,
    aut_orbit_representatives,
    classify,
    exact_census,
    hypothesis_flags,
    sample_subsets,
    sampled_census,
    unlabelled_census,
    unlabelled_summary,
)
from src.core.digraph import ConnectionSet, cayley
from src.core.errors import CapExceededError, CheckpointMismatchError, DegreeMismatchError, PreconditionError
from src.core.groups import group_automorphisms, make_group


def S(r, *elements):
    return ConnectionSet.from_elements(r, elements)


class TestClassify:
    def test_directed_triangle_is_drr(self):
        record = classify(make_group("cyclic:3"), S(3, 1))
        assert record.classification is Classification.DRR
        assert record.aut_order == 3
        assert record.csv_row() == ["02", "3", "DRR", "1"]

    def test_empty_set_on_four_points_is_non_normal(self):
        record = classify(make_group("cyclic:4"), S(4))
        assert record.aut_order == 24
        assert record.classification is Classification.NON_NORMAL

    def test_complete_triangle_is_normal_non_drr(self):
        record = classify(make_group("cyclic:3"), S(3, 1, 2))
        assert record.aut_order == 6
        assert record.classification is Classification.NORMAL_NON_DRR

    def test_size_mismatch(self):
        with pytest.raises(DegreeMismatchError):
            classify(make_group("cyclic:3"), S(4, 1))

    def test_klein_four_has_no_drr_against_oracle(self):
        R = make_group("klein4")
        for bits in range(16):
            cs = ConnectionSet(4, bits)
            record = classify(R, cs)
            assert record.aut_order == brute_force_automorphisms(cayley(R, cs)).order
            assert record.classification is not Classification.DRR

    def test_classification_constant_on_aut_orbits(self):
        R = make_group("cyclic:5")
        auts = group_automorphisms(R)
        for bits in range(1 << 5):
            cs = ConnectionSet(5, bits)
            base = classify(R, cs)
            for phi in auts:
                other = classify(R, cs.image(phi))
                assert (other.aut_order, other.classification) == (base.aut_order, base.classification)


def test_orbit_representatives_of_cyclic_three():
    reps, sizes = aut_orbit_representatives(make_group("cyclic:3"))
    assert reps.tolist() == [0, 1, 2, 3, 6, 7]
    assert sizes.tolist() == [1, 1, 2, 2, 1, 1]


def test_orbit_representatives_of_klein_four():
    reps, sizes = aut_orbit_representatives(make_group("klein4"))
    assert reps.size == 8
    assert int(sizes.sum()) == 16


def test_tallies_merge_is_associative_and_commutative():
    a, b, c = Tallies(), Tallies(), Tallies()
    a.add(CensusRecord(S(3, 1), 3, Classification.DRR, 2))
    b.add(CensusRecord(S(3), 6, Classification.NORMAL_NON_DRR))
    c.add(CensusRecord(S(4), 24, Classification.NON_NORMAL))
    assert ((a + b) + c).to_json() == (a + (b + c)).to_json() == (c + b + a).to_json()
    assert (a + b + c).total == 4
    assert Tallies.from_json((a + b).to_json()).to_json() == (a + b).to_json()


class TestExactCensus:
    def test_cyclic_three_counts(self):
        summary = exact_census(make_group("cyclic:3"))
        assert summary.counts == {"DRR": 4, "NORMAL_NON_DRR": 4, "NON_NORMAL": 0}
        assert summary.total == 8
        assert summary.drr_proportion == "1/2"
        assert summary.drr_proportion_decimal == "0.500000"
        assert summary.normal_proportion == "1/1"

    def test_trivial_and_order_two_groups(self):
        assert exact_census(make_group("trivial")).counts["DRR"] == 2
        assert exact_census(make_group("cyclic:2")).counts["DRR"] == 4

    def test_klein_four_has_no_drr(self):
        summary = exact_census(make_group("klein4"))
        assert summary.counts["DRR"] == 0
        assert summary.total == 16
        assert summary.drr_proportion == "0/1"

    @pytest.mark.parametrize("spec", ["cyclic:4", "cyclic:5", "klein4", "cyclic:6", "dihedral:6"])
    def test_reduction_gives_identical_tallies(self, spec):
        R = make_group(spec)
        plain = exact_census(R)
        reduced = exact_census(R, reduce_by_aut=True)
        assert plain.counts == reduced.counts
        assert plain.total == reduced.total == 1 << R.order

    def test_records_stream_in_encoding_order(self):
        records = []
        exact_census(make_group("cyclic:3"), on_record=records.append, chunk_size=3)
        assert [r.subset.bits for r in records] == list(range(8))
        assert CSV_HEADER == ("subset_hex", "aut_order", "class", "orbit_size")

    def test_summary_json_is_deterministic_and_has_no_wall_time(self):
        a = exact_census(make_group("cyclic:4"), chunk_size=5)
        b = exact_census(make_group("cyclic:4"), chunk_size=16)
        assert a.wall_time_s is not None
        assert "wall_time_s" not in a.to_json()
        assert a.to_json() == b.to_json()

    def test_worker_count_does_not_change_summary(self):
        R = make_group("cyclic:4")
        assert exact_census(R, workers=2, chunk_size=4).to_json() == exact_census(R, workers=1).to_json()

    def test_cap(self, monkeypatch):
        from src.config import settings

        monkeypatch.setattr(settings, "exact_census_cap", 3)
        with pytest.raises(CapExceededError):
            exact_census(make_group("cyclic:4"))


class TestCheckpoint:
    def test_resume_after_truncated_write(self, tmp_path):
        R = make_group("cyclic:4")
        path = tmp_path / "run.ckpt"
        full = exact_census(R, checkpoint=path, chunk_size=4)
        lines = path.read_text(encoding="utf-8").splitlines()
        assert json.loads(lines[0])["group_id"] == "cyclic:4"
        assert len(lines) == 1 + 4

        path.write_text("\n".join(lines[:3]) + "\n" + lines[3][:10], encoding="utf-8")
        resumed = exact_census(R, checkpoint=path, chunk_size=4)
        assert resumed.to_json() == full.to_json()
        assert len(path.read_text(encoding="utf-8").splitlines()) == 1 + 4

    def test_header_mismatch(self, tmp_path):
        path = tmp_path / "run.ckpt"
        exact_census(make_group("cyclic:3"), checkpoint=path, chunk_size=4)
        with pytest.raises(CheckpointMismatchError):
            exact_census(make_group("cyclic:3"), checkpoint=path, chunk_size=2)
        with pytest.raises(CheckpointMismatchError):
            exact_census(make_group("cyclic:3"), reduce_by_aut=True, checkpoint=path, chunk_size=4)

    def test_records_and_checkpoint_are_exclusive(self, tmp_path):
        with pytest.raises(PreconditionError):
            exact_census(make_group("cyclic:3"), checkpoint=tmp_path / "c", on_record=lambda rec: None)


class TestSampledCensus:
    def test_subsets_fit_the_group(self):
        draws = sample_subsets(5, 100, seed=7)
        assert draws.shape == (100,)
        assert int(draws.max()) < 32
        assert sample_subsets(5, 100, seed=7).tolist() == draws.tolist()

    def test_same_seed_same_summary(self):
        R = make_group("cyclic:5")
        a = sampled_census(R, 50, seed=12345)
        b = sampled_census(R, 50, seed=12345, workers=2, chunk_size=16)
        assert a.to_json() == b.to_json()
        assert a.samples == 50 and a.seed == 12345 and a.total == 50

    def test_single_sample(self):
        summary = sampled_census(make_group("cyclic:3"), 1, seed=0)
        assert summary.total == 1
        assert summary.half_width_95 == "0.000000"

    def test_estimate_close_to_exact(self):
        R = make_group("cyclic:5")
        exact = exact_census(R).drr_fraction()
        sampled = sampled_census(R, 200, seed=2024).drr_fraction()
        assert abs(float(sampled) - float(exact)) < 0.25

    def test_invalid_arguments(self):
        R = make_group("cyclic:3")
        with pytest.raises(PreconditionError):
            sampled_census(R, 0, seed=1)
        with pytest.raises(PreconditionError):
            sampled_census(R, 5, seed=-1)


class TestUnlabelledCensus:
    def test_trivial_group(self):
        counts = unlabelled_census(make_group("trivial"))
        assert (counts.cd_count, counts.drr_count) == (2, 2)

    def test_cyclic_three(self):
        counts = unlabelled_census(make_group("cyclic:3"))
        assert (counts.cd_count, counts.drr_count) == (6, 2)
        assert counts.drr_subset_count == 4
        assert counts.aut_r_order == 2

    @pytest.mark.parametrize("spec", ["cyclic:4", "cyclic:5", "klein4", "dihedral:6"])
    def test_drr_classes_bound_drr_sets(self, spec):
        counts = unlabelled_census(make_group(spec))
        assert counts.drr_count == counts.drr_orbit_count
        assert counts.drr_count * counts.aut_r_order >= counts.drr_subset_count

    def test_cyclic_eight_class_count(self):
        assert unlabelled_census(make_group("cyclic:8")).cd_count == 92

    def test_classes_match_distinct_canonical_codes(self):
        R = make_group("cyclic:8")
        reps, _ = aut_orbit_representatives(R)
        codes = {canonical_form(cayley(R, ConnectionSet(8, int(bits)))).hex() for bits in reps}
        assert unlabelled_census(R).cd_count == len(codes)

    def test_summary_counts(self):
        summary = unlabelled_summary(make_group("cyclic:3"))
        assert summary.mode == "unlabelled"
        assert summary.counts == {"DRR": 2, "NON_DRR": 4}
        assert summary.drr_proportion == "1/3"


class TestHypothesisFlags:
    def test_drr_has_no_overgroups(self):
        report = hypothesis_flags(make_group("cyclic:3"), S(3, 1))
        assert report.h1 is False
        assert report.overgroups == []

    def test_klein_four_single_involution(self):
        report = hypothesis_flags(make_group("klein4"), S(4, 1))
        assert report.h1 is True
        assert report.aut_order == 8
        assert len(report.overgroups) == 1
        flags = report.overgroups[0]
        assert (flags.order, flags.stabilizer_order, flags.core_order) == (8, 2, 4)
        assert (flags.h2, flags.h3, flags.h4, flags.h5) == (False, True, False, False)

    def test_octahedron_has_core_free_overgroup(self):
        # complement of a perfect matching on S3: Aut = Z2 wr S3, containing an S4 where R is maximal and core-free
        report = hypothesis_flags(make_group("dihedral:6"), S(6, 1, 2, 4, 5))
        assert report.aut_order == 48
        core_free = [flags for flags in report.overgroups if flags.h5]
        assert core_free
        for flags in core_free:
            assert flags.core_order == 1
            assert flags.h3
            assert flags.h4 == (flags.stabilizer_order > 1)
