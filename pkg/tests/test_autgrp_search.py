"""Tests for automorphism search and canonical forms"""
import random

import numpy as np
import pytest

from src.core.autgrp import (
    SearchStats,
    automorphism_group,
    brute_force_automorphisms,
    brute_force_isomorphic,
    canonical_digraph,
    canonical_form,
)
from src.core.autgrp.refinement import individualize, refine, target_cell
from src.core.digraph import ColoredDigraph, ConnectionSet, cayley
from src.core.errors import CapExceededError, PreconditionError
from src.core.groups import catalog, make_group, regular_representation
from src.core.perm import Permutation, group_from_generators, same_group


def random_digraph(rng, n_max=6, colours=2):
    n = rng.randint(1, n_max)
    density = rng.choice([0.2, 0.4, 0.6])
    arcs = [(u, v) for u in range(n) for v in range(n) if rng.random() < density]
    g = ColoredDigraph.from_arcs(n, arcs)
    return g.recolor([rng.randrange(colours) for _ in range(n)])


def random_relabel(rng, g):
    images = list(range(g.n))
    rng.shuffle(images)
    return g.relabel(Permutation.from_images(images))


def directed_triangle():
    return cayley(make_group("cyclic:3"), ConnectionSet.from_elements(3, [1]))


class TestRefinement:
    def test_refinement_splits_by_degree(self):
        # path 0 -> 1 -> 2
        g = ColoredDigraph.from_arcs(3, [(0, 1), (1, 2)])
        labels = refine(g.matrix, np.zeros(3, dtype=np.int64))
        assert len(set(labels.tolist())) == 3

    def test_loops_participate(self):
        g = ColoredDigraph.from_arcs(2, [(0, 0)])
        labels = refine(g.matrix, np.zeros(2, dtype=np.int64))
        assert labels[0] != labels[1]

    def test_individualize_and_target(self):
        labels = np.array([0, 0, 1, 1, 1])
        assert target_cell(labels) == 0
        out = individualize(labels, 1)
        assert out.tolist() == [1, 0, 2, 2, 2]
        assert target_cell(np.arange(4)) == -1


class TestAutomorphismGroup:
    def test_directed_triangle(self):
        assert automorphism_group(directed_triangle()).order == 3

    def test_arcless_four(self):
        assert automorphism_group(ColoredDigraph.empty(4)).order == 24

    def test_undirected_four_cycle(self):
        g = cayley(make_group("cyclic:4"), ConnectionSet.from_elements(4, [1, 3]))
        assert automorphism_group(g).order == 8

    def test_colours_restrict(self):
        g = ColoredDigraph.empty(4).recolor([0, 0, 1, 1])
        assert automorphism_group(g).order == 4

    def test_single_vertex(self):
        assert automorphism_group(ColoredDigraph.from_arcs(1, [(0, 0)])).order == 1

    def test_seed_must_be_automorphisms(self):
        g = directed_triangle()
        bad = group_from_generators(3, [Permutation.parse("(0 1)", 3)])
        with pytest.raises(PreconditionError):
            automorphism_group(g, seed=bad)

    def test_stats_are_filled(self):
        stats = SearchStats()
        automorphism_group(ColoredDigraph.empty(5), stats=stats)
        assert stats.leaves >= 1
        assert stats.automorphisms >= 1

    def test_matches_oracle(self):
        rng = random.Random(2024)
        for _ in range(1000):
            g = random_digraph(rng, n_max=7)
            fast = automorphism_group(g)
            slow = brute_force_automorphisms(g)
            assert fast.order == slow.order
            assert fast.element_set() == slow.element_set()

    def test_seed_does_not_change_result(self):
        rng = random.Random(5)
        specs = [s for s in catalog(12)]
        for _ in range(200):
            grp = make_group(rng.choice(specs))
            g = cayley(grp, ConnectionSet(grp.order, rng.getrandbits(grp.order)))
            seeded = automorphism_group(g, seed=regular_representation(grp))
            plain = automorphism_group(g)
            assert same_group(seeded, plain)

    def test_transitive_non_regular_has_nontrivial_stabiliser(self):
        rng = random.Random(9)
        for _ in range(40):
            grp = make_group(rng.choice(catalog(10)))
            aut = automorphism_group(cayley(grp, ConnectionSet(grp.order, rng.getrandbits(grp.order))))
            assert aut.is_transitive()
            if aut.order > grp.order:
                assert aut.point_stabilizer(0).order > 1


class TestOracle:
    def test_small_cases(self):
        assert brute_force_automorphisms(directed_triangle()).order == 3
        assert brute_force_automorphisms(ColoredDigraph.from_arcs(1, [(0, 0)])).order == 1
        assert brute_force_automorphisms(ColoredDigraph.empty(2)).order == 2

    def test_degree_cap(self):
        with pytest.raises(CapExceededError):
            brute_force_automorphisms(ColoredDigraph.empty(9))


class TestCanonicalForm:
    def test_relabelling_invariance(self):
        rng = random.Random(77)
        for _ in range(500):
            g = random_digraph(rng, n_max=7)
            assert canonical_form(g) == canonical_form(random_relabel(rng, g))

    def test_reverse_triangle(self):
        forward = directed_triangle()
        backward = cayley(make_group("cyclic:3"), ConnectionSet.from_elements(3, [2]))
        assert canonical_form(forward) == canonical_form(backward)
        assert brute_force_isomorphic(forward, backward)

    def test_different_arc_counts(self):
        assert canonical_form(directed_triangle()) != canonical_form(ColoredDigraph.empty(3))

    def test_separates_exactly_the_non_isomorphic(self):
        rng = random.Random(31)
        for _ in range(500):
            a = random_digraph(rng, n_max=5)
            b = random_digraph(rng, n_max=5)
            same_code = canonical_form(a) == canonical_form(b)
            assert same_code == brute_force_isomorphic(a, b)

    def test_hex_round_trip(self):
        code = canonical_form(directed_triangle())
        assert code.hex() == code.hex().lower()
        assert type(code).from_hex(code.hex()) == code

    def test_canonical_digraph_is_isomorphic(self):
        g = ColoredDigraph.from_arcs(4, [(0, 1), (1, 2), (2, 2), (3, 0)])
        c = canonical_digraph(g)
        assert brute_force_isomorphic(g, c)
        assert canonical_digraph(random_relabel(random.Random(1), g)) == c
