"""Tests for permutations and Schreier-Sims groups"""
import pytest

from src.core.errors import CapExceededError, DegreeMismatchError, NotSubgroupError
from src.core.perm import (
    Permutation,
    closure,
    core_in,
    group_fingerprint,
    group_from_generators,
    intersection,
    is_normal,
    maximal_overgroups,
    orbits,
    point_stabilizer,
    same_group,
    subgroup_lattice,
    symmetric_group,
    trivial_group,
)


def P(text, degree):
    return Permutation.parse(text, degree)


def dihedral_on_square():
    return group_from_generators(4, [P("(0 1 2 3)", 4), P("(0 2)", 4)])


class TestPermutation:
    def test_composition_applies_left_factor_first(self):
        p = P("(0 1)", 3)
        q = P("(1 2)", 3)
        assert (p * q)(0) == 2
        assert (q * p)(0) == 1

    def test_inverse_and_identity(self):
        p = P("(0 3 1)(2 4)", 5)
        assert (p * p.inverse()).is_identity()
        assert (~p * p).is_identity()
        assert Permutation.identity(4).cycle_notation() == "()"

    def test_parse_and_format(self):
        p = P("(0 1 2)(3 4)", 6)
        assert p.cycle_notation() == "(0 1 2)(3 4)"
        assert p.degree == 6
        assert p.cycle_count == 3
        assert p.fixed_points == (5,)
        assert p.order == 6

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            Permutation.parse("(0 1) x")
        with pytest.raises(ValueError):
            Permutation.parse("(0 5)", 3)

    def test_not_a_bijection(self):
        with pytest.raises(ValueError):
            Permutation((0, 0, 1))

    def test_json_round_trip(self):
        p = P("(0 2)(1 3)", 4)
        assert Permutation.from_json(p.to_json()) == p

    def test_power_and_conjugate(self):
        c = P("(0 1 2 3)", 4)
        assert c ** 2 == P("(0 2)(1 3)", 4)
        assert c ** 4 == Permutation.identity(4)
        assert c ** -1 == c.inverse()
        t = P("(0 1)", 4)
        assert c.conjugate(t) == t.inverse() * c * t

    def test_image_of_mask(self):
        c = P("(0 1 2)", 3)
        assert c.image_of_mask(0b001) == 0b010
        assert c.image_of_mask(0b111) == 0b111

    def test_degree_mismatch(self):
        with pytest.raises(DegreeMismatchError):
            P("(0 1)", 2) * P("(0 1)", 3)


class TestSchreierSims:
    def test_symmetric_three(self):
        g = group_from_generators(3, [P("(0 1)", 3), P("(0 1 2)", 3)])
        assert g.order == 6
        assert len(set(g.elements())) == 6

    def test_no_generators(self):
        g = group_from_generators(5, [])
        assert g.order == 1
        assert list(g.elements()) == [Permutation.identity(5)]

    def test_cyclic_four_membership(self):
        g = group_from_generators(4, [P("(0 1 2 3)", 4)])
        assert g.order == 4
        assert P("(0 2)(1 3)", 4) in g
        assert P("(0 1)", 4) not in g

    def test_redundant_generators_dropped(self):
        c = P("(0 1 2 3)", 4)
        g = group_from_generators(4, [c, c ** 2, c ** 3])
        assert g.generators == (c,)

    def test_base_uses_smallest_moved_point(self):
        g = group_from_generators(5, [P("(2 3 4)", 5)])
        assert g.base == (2,)

    @pytest.mark.parametrize("n, order", [(1, 1), (2, 2), (4, 24), (5, 120), (6, 720)])
    def test_symmetric_orders(self, n, order):
        assert symmetric_group(n).order == order

    def test_elements_are_distinct_members(self):
        g = dihedral_on_square()
        elems = list(g.elements())
        assert len(elems) == g.order == 8
        assert len(set(elems)) == 8
        assert all(g.contains(x) for x in elems)

    def test_degree_mismatch_rejected(self):
        with pytest.raises(DegreeMismatchError):
            group_from_generators(4, [P("(0 1)", 3)])


class TestOrbitsAndStabilisers:
    def test_orbits_are_sorted_cells(self):
        g = group_from_generators(5, [P("(2 3)", 5), P("(0 1)", 5)])
        assert orbits(g).cells == ((0, 1), (2, 3), (4,))

    def test_orbit_stabiliser(self):
        s4 = symmetric_group(4)
        for p in range(4):
            stab = point_stabilizer(s4, p)
            assert stab.order * len(s4.orbit(p)) == s4.order
            assert all(g.images[p] == p for g in stab.elements())

    def test_pointwise_stabilizer_with_new_base(self):
        s4 = symmetric_group(4)
        stab = s4.pointwise_stabilizer([2, 3])
        assert stab.order == 2
        assert set(stab.elements()) == {Permutation.identity(4), P("(0 1)", 4)}

    def test_pointwise_stabilizer_matching_base_prefix(self):
        s4 = symmetric_group(4)
        stab = s4.pointwise_stabilizer(list(s4.base[:1]))
        assert stab.order == 6

    def test_regularity(self):
        assert group_from_generators(4, [P("(0 1 2 3)", 4)]).is_regular()
        assert not dihedral_on_square().is_regular()


class TestNormalityAndCores:
    def test_alternating_normal_in_symmetric(self):
        s3 = symmetric_group(3)
        a3 = group_from_generators(3, [P("(0 1 2)", 3)])
        assert is_normal(s3, a3)
        assert not is_normal(s3, group_from_generators(3, [P("(0 1)", 3)]))

    def test_is_normal_requires_subgroup(self):
        c4 = group_from_generators(4, [P("(0 1 2 3)", 4)])
        with pytest.raises(NotSubgroupError):
            is_normal(c4, group_from_generators(4, [P("(0 1)", 4)]))

    def test_core_of_transposition_is_trivial(self):
        s3 = symmetric_group(3)
        assert core_in(s3, group_from_generators(3, [P("(0 1)", 3)])).order == 1

    def test_core_of_dihedral_in_s4_is_klein(self):
        core = core_in(symmetric_group(4), dihedral_on_square())
        assert core.order == 4
        assert P("(0 1)(2 3)", 4) in core

    def test_core_of_normal_subgroup_is_itself(self):
        s3 = symmetric_group(3)
        a3 = group_from_generators(3, [P("(0 1 2)", 3)])
        assert same_group(core_in(s3, a3), a3)

    def test_closure(self):
        c = group_from_generators(3, [P("(0 1 2)", 3)])
        assert closure(c, [P("(0 1)", 3)]).order == 6
        with pytest.raises(DegreeMismatchError):
            closure(c, [P("(0 1)", 4)])

    def test_intersection(self):
        d8 = dihedral_on_square()
        c4 = group_from_generators(4, [P("(0 1 2 3)", 4)])
        other = group_from_generators(4, [P("(0 1)(2 3)", 4), P("(0 2)(1 3)", 4)])
        assert intersection(d8, c4).order == 4
        assert intersection(c4, other).order == 2


class TestMaximalOvergroups:
    def test_cyclic_four_in_s4(self):
        c4 = group_from_generators(4, [P("(0 1 2 3)", 4)])
        found = maximal_overgroups(symmetric_group(4), c4)
        assert len(found) == 1
        assert same_group(found[0], dihedral_on_square())

    def test_trivial_in_s3(self):
        found = maximal_overgroups(symmetric_group(3), trivial_group(3))
        assert [g.order for g in found] == [2, 2, 2, 3]

    def test_no_overgroups_of_whole_group(self):
        s3 = symmetric_group(3)
        assert maximal_overgroups(s3, s3) == []

    def test_each_result_has_subgroup_maximal(self):
        a = symmetric_group(4)
        sub = group_from_generators(4, [P("(0 1)", 4)])
        found = maximal_overgroups(a, sub)
        assert found
        fps = {group_fingerprint(g) for g in found}
        assert len(fps) == len(found)
        lattice = subgroup_lattice(a)
        sub_elems = set(sub.elements())
        for g in found:
            g_elems = set(g.elements())
            between = [s for s in lattice if sub_elems < set(s) < g_elems]
            assert between == []

    def test_cap(self):
        with pytest.raises(CapExceededError):
            maximal_overgroups(symmetric_group(4), trivial_group(4), cap=10)


def test_subgroup_lattice_of_s3():
    sizes = sorted(len(s) for s in subgroup_lattice(symmetric_group(3)))
    assert sizes == [1, 2, 2, 2, 3, 6]
