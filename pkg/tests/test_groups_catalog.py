"""Tests for the group catalog and table groups"""
import numpy as np
import pytest

from src.core.errors import CapExceededError, GroupSpecError, NotNormalError
from src.core.groups import (
    FiniteGroup,
    GroupSpec,
    automorphism_count_bound,
    catalog,
    generating_set,
    group_automorphisms,
    make_group,
    normal_subgroups,
    quotient_group,
    regular_representation,
    spec_order,
)


class TestMakeGroup:
    def test_trivial(self):
        g = make_group("cyclic:1")
        assert g.order == 1
        assert make_group("trivial") == g

    def test_cyclic_three(self):
        g = make_group("cyclic:3")
        assert g.mul(1, 1) == 2
        assert g.mul(1, 2) == 0
        assert g.is_abelian()

    def test_dihedral_eight_involutions(self):
        g = make_group("dihedral:8")
        small = [x for x in range(8) if g.element_order(x) <= 2]
        assert len(small) == 6
        assert len(small) - 1 == 5
        assert not g.is_abelian()

    def test_dihedral_layout(self):
        g = make_group("dihedral:6")
        # rotations first, reflections after
        assert [g.element_order(x) for x in range(6)] == [1, 3, 3, 2, 2, 2]
        assert g.element_names[:3] == ("r^0", "r^1", "r^2")

    def test_quaternion(self):
        g = make_group("quaternion")
        assert g.order == 8
        assert sorted(g.element_orders) == [1, 2, 4, 4, 4, 4, 4, 4]
        assert not g.is_abelian()

    def test_klein_is_abelian_product(self):
        g = make_group("klein4")
        assert g.order == 4
        assert g.element_orders == (1, 2, 2, 2)
        assert g.element_names[3] == "(1,1)"

    def test_product(self):
        spec = GroupSpec.parse("product:cyclic:2*dihedral:6")
        g = make_group(spec)
        assert g.order == 12
        assert spec_order(spec) == 12
        assert spec.id == "product:cyclic:2*dihedral:6"
        assert GroupSpec.parse(spec.id) == spec

    def test_lexicographic_order_first_factor_most_significant(self):
        g = make_group("abelian:2,4")
        # (0,1) is index 1, (1,0) is index 4
        assert g.mul(1, 4) == 5
        assert g.element_order(1) == 4
        assert g.element_order(4) == 2


class TestGroupSpecErrors:
    @pytest.mark.parametrize(
        "text",
        ["dihedral:7", "dicyclic:6", "abelian:2,3", "bogus:3", "cyclic:", "cyclic:0", "cyclic:x", "product:cyclic:2"],
    )
    def test_invalid_specs(self, text):
        with pytest.raises(GroupSpecError):
            GroupSpec.parse(text)


class TestTableValidation:
    def test_non_latin(self):
        with pytest.raises(GroupSpecError):
            FiniteGroup([[0, 1], [1, 1]])

    def test_non_associative_loop(self):
        loop = [
            [0, 1, 2, 3, 4],
            [1, 0, 3, 4, 2],
            [2, 4, 0, 1, 3],
            [3, 2, 4, 0, 1],
            [4, 3, 1, 2, 0],
        ]
        with pytest.raises(GroupSpecError, match="associative"):
            FiniteGroup(loop)

    def test_identity_must_be_index_zero(self):
        with pytest.raises(GroupSpecError):
            FiniteGroup([[1, 0], [0, 1]])

    def test_table_file_round_trip(self, tmp_path):
        g = make_group("dihedral:8")
        path = tmp_path / "d8.txt"
        path.write_text(g.to_table_text(), encoding="utf-8")
        loaded = make_group(f"file:{path}")
        assert loaded == g
        assert loaded.name == f"file:{path}"

    def test_malformed_file(self, tmp_path):
        path = tmp_path / "bad.txt"
        path.write_text("order 2\n0 1\n", encoding="utf-8")
        with pytest.raises(GroupSpecError):
            make_group(f"file:{path}")
        with pytest.raises(GroupSpecError):
            make_group(f"file:{tmp_path / 'missing.txt'}")


class TestStructure:
    def test_regular_representation(self):
        reg = regular_representation(make_group("cyclic:3"))
        assert reg.order == 3
        assert reg.is_regular()

    def test_klein_regular_images_fixed_point_free(self):
        g = make_group("klein4")
        reg = regular_representation(g)
        non_identity = [p for p in reg.elements() if not p.is_identity()]
        assert len(non_identity) == 3
        assert all(not p.fixed_points and p.order == 2 for p in non_identity)

    @pytest.mark.parametrize(
        "text, count",
        [("cyclic:2", 1), ("cyclic:3", 2), ("klein4", 6), ("cyclic:8", 4), ("dihedral:8", 8), ("quaternion", 24)],
    )
    def test_automorphism_counts(self, text, count):
        g = make_group(text)
        auts = group_automorphisms(g)
        assert len(auts) == count
        assert auts[0].is_identity()
        assert len(auts) <= automorphism_count_bound(g.order)
        t = g.table
        for phi in auts:
            img = np.array(phi.images)
            assert np.array_equal(img[t], t[img[:, None], img[None, :]])

    def test_automorphism_cap(self):
        with pytest.raises(CapExceededError):
            group_automorphisms(make_group("cyclic:8"), cap=4)

    def test_generating_sets_are_small(self):
        for spec in catalog(16):
            g = make_group(spec)
            gens = generating_set(g)
            assert set(g.generated_subgroup(gens)) == set(range(g.order))
            assert 2 ** len(gens) <= g.order

    def test_normal_subgroups(self):
        assert len(normal_subgroups(make_group("cyclic:5"))) == 2
        assert [len(s) for s in normal_subgroups(make_group("cyclic:4"))] == [1, 2, 4]
        assert len(normal_subgroups(make_group("dihedral:8"))) == 6
        assert [len(s) for s in normal_subgroups(make_group("dihedral:6"))] == [1, 3, 6]

    def test_quotient_group(self):
        q, proj = quotient_group(make_group("cyclic:4"), [0, 2])
        assert q.order == 2
        assert proj == (0, 1, 0, 1)

    def test_dihedral_mod_centre_is_klein(self):
        q, proj = quotient_group(make_group("dihedral:8"), [0, 2])
        assert q.order == 4
        assert q.is_abelian()
        assert q.element_orders == (1, 2, 2, 2)
        assert proj[0] == 0

    def test_quotient_requires_normal(self):
        with pytest.raises(NotNormalError):
            quotient_group(make_group("dihedral:6"), [0, 3])


def test_catalog_sorted_by_order():
    specs = catalog(8)
    orders = [spec_order(s) for s in specs]
    assert orders == sorted(orders)
    ids = [s.id for s in specs]
    assert "abelian:2,2" in ids
    assert "dicyclic:8" in ids
    assert len(set(ids)) == len(ids)
