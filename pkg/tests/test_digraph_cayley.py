"""Tests for connection sets, colored digraphs and Cayley digraphs"""
import pickle
import random
import threading

import numpy as np
import pytest

from src.core.digraph import ColoredDigraph, ConnectionSet, cayley, is_automorphism, is_isomorphism
from src.core.digraph.io import dumps, from_hex_rows, loads, read_digraph, to_hex_rows, write_digraph
from src.core.errors import DegreeMismatchError, PreconditionError
from src.core.groups import catalog, group_automorphisms, make_group, regular_representation
from src.core.perm import Permutation


def directed_triangle():
    return cayley(make_group("cyclic:3"), ConnectionSet.from_elements(3, [1]))


class TestConnectionSet:
    def test_hex_is_little_endian(self):
        s = ConnectionSet.from_elements(3, [1])
        assert s.to_hex() == "02"
        assert ConnectionSet.from_hex(3, "02") == s
        wide = ConnectionSet.from_elements(12, [0, 9])
        assert wide.to_hex() == "0102"
        assert ConnectionSet.from_hex(12, "0102") == wide

    def test_hex_errors(self):
        with pytest.raises(PreconditionError):
            ConnectionSet.from_hex(3, "f")
        with pytest.raises(PreconditionError):
            ConnectionSet.from_hex(3, "ff")
        with pytest.raises(PreconditionError):
            ConnectionSet.from_hex(3, "zz")

    def test_rank_select_iteration(self):
        s = ConnectionSet.from_elements(8, [6, 1, 3])
        assert list(s) == [1, 3, 6]
        assert len(s) == 3
        assert s.rank(4) == 2
        assert s.select(2) == 6
        assert 3 in s and 2 not in s
        with pytest.raises(IndexError):
            s.select(3)

    def test_image_and_translate(self):
        g = make_group("cyclic:4")
        s = ConnectionSet.from_elements(4, [1])
        phi = Permutation.from_images([0, 3, 2, 1])
        assert s.image(phi) == ConnectionSet.from_elements(4, [3])
        assert s.translate(g.table, 2) == ConnectionSet.from_elements(4, [3])


class TestColoredDigraph:
    def test_colours_must_be_contiguous(self):
        with pytest.raises(PreconditionError):
            ColoredDigraph(2, [0, 0], [0, 2])

    def test_recolor_normalises_labels(self):
        g = ColoredDigraph.empty(3).recolor([("b", 1), ("a", 7), ("b", 1)])
        assert g.colors == (1, 0, 1)

    def test_in_adjacency_and_matrix(self):
        g = directed_triangle()
        assert g.in_adj == (0b100, 0b001, 0b010)
        assert g.matrix.tolist() == [[0, 1, 0], [0, 0, 1], [1, 0, 0]]
        assert not g.matrix.flags.writeable

    def test_lazy_fill_under_threads(self):
        g = cayley(make_group("dihedral:8"), ConnectionSet.from_elements(8, [1, 4]))
        results = []

        def worker():
            results.append(g.in_adj)

        threads = [threading.Thread(target=worker) for _ in range(8)]
        for t in threads:
            t.start()
        for t in threads:
            t.join()
        assert len(set(results)) == 1

    def test_relabel(self):
        g = directed_triangle()
        p = Permutation.parse("(0 1)", 3)
        h = g.relabel(p)
        assert sorted(h.arcs()) == [(0, 2), (1, 0), (2, 1)]
        assert is_isomorphism(g, h, p)
        assert not is_isomorphism(g, g, p)

    def test_pickle_drops_caches(self):
        g = directed_triangle()
        _ = g.matrix
        clone = pickle.loads(pickle.dumps(g))
        assert clone == g
        assert clone.in_adj == g.in_adj

    def test_serialisation(self, tmp_path):
        g = ColoredDigraph.from_arcs(4, [(0, 1), (1, 2), (2, 3), (3, 0), (2, 2)], [0, 1, 0, 1])
        assert loads(dumps(g, "json")) == g
        text = to_hex_rows(g)
        assert text.splitlines()[:3] == ["n 4", "colors 0 1 0 1", "02"]
        assert from_hex_rows(text) == g
        path = tmp_path / "g.txt"
        write_digraph(path, g, fmt="hex")
        assert read_digraph(path) == g


class TestCayley:
    def test_directed_triangle(self):
        assert sorted(directed_triangle().arcs()) == [(0, 1), (1, 2), (2, 0)]

    def test_empty_and_full(self):
        g = make_group("klein4")
        assert cayley(g, ConnectionSet.empty(4)).arc_count == 0
        full = cayley(g, ConnectionSet.full(4))
        assert full.arc_count == 16
        assert full.has_loops()

    def test_size_mismatch(self):
        with pytest.raises(DegreeMismatchError):
            cayley(make_group("cyclic:3"), ConnectionSet.empty(4))

    def test_automorphism_checks(self):
        g = directed_triangle()
        assert is_automorphism(g, Permutation.identity(3))
        assert is_automorphism(g, Permutation.parse("(0 1 2)", 3))
        assert not is_automorphism(g, Permutation.parse("(0 1)", 3))
        with pytest.raises(DegreeMismatchError):
            is_automorphism(g, Permutation.identity(4))

    def test_colour_preservation(self):
        g = ColoredDigraph.empty(2).recolor([0, 1])
        assert not is_automorphism(g, Permutation.parse("(0 1)", 2))

    def test_regular_images_are_automorphisms(self):
        rng = random.Random(7)
        specs = catalog(16)
        for _ in range(200):
            spec = rng.choice(specs)
            grp = make_group(spec)
            s = ConnectionSet(grp.order, rng.getrandbits(grp.order))
            gamma = cayley(grp, s)
            assert gamma.arc_count == grp.order * len(s)
            reg = regular_representation(grp)
            assert all(is_automorphism(gamma, p) for p in reg.generators)

    def test_group_automorphism_is_isomorphism(self):
        rng = random.Random(11)
        for text in ["cyclic:5", "klein4", "dihedral:6", "quaternion"]:
            grp = make_group(text)
            for _ in range(10):
                s = ConnectionSet(grp.order, rng.getrandbits(grp.order))
                for phi in group_automorphisms(grp):
                    assert is_isomorphism(cayley(grp, s), cayley(grp, s.image(phi)), phi)
