"""个体化-细化搜索: automorphism groups and canonical forms of colored digraphs.

The search tree: the root is the refined colour partition; a node's
children individualise, in ascending order, each vertex of the node's
target cell (first smallest non-singleton cell) and refine again. Leaves
are discrete partitions, read as vertex -> position labellings.

Automorphisms come from the first-path method. The first path always takes
the smallest vertex of the target cell. Its levels are revisited deepest
first; at level d every child outside the known orbit of the first-path
child is searched for a leaf with the same certificate as the first leaf,
and each hit yields a new generator. Known orbits use the group generated
so far (including any seed), restricted to the pointwise stabiliser of the
level's prefix.

The canonical form is the smallest leaf certificate over the whole tree;
siblings in one orbit of the pointwise stabiliser of the prefix in Aut(Γ)
have equal subtrees up to certificate, so only the smallest is expanded.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

import numpy as np

from src.core.autgrp.refinement import (
    cell_members,
    certificate,
    individualize,
    initial_partition,
    node_invariant,
    refine,
    target_cell,
)
from src.core.digraph.digraph import ColoredDigraph, is_automorphism
from src.core.errors import DegreeMismatchError, PreconditionError
from src.core.perm.group import PermGroup, group_from_generators
from src.core.perm.permutation import Permutation

logger = logging.getLogger(__name__)


@dataclass
class SearchStats:
    nodes: int = 0
    leaves: int = 0
    automorphisms: int = 0
    pruned_by_orbit: int = 0
    pruned_by_invariant: int = 0


@dataclass(frozen=True)
class CanonicalCode:
    """Canonical certificate of a colored digraph.

    Codes compare equal iff the digraphs are isomorphic; ``labeling`` (vertex
    -> canonical position) is carried along but ignored by equality.
    """

    certificate: bytes
    labeling: Tuple[int, ...] = field(compare=False, default=())

    def hex(self) -> str:
        return self.certificate.hex()

    @classmethod
    def from_hex(cls, text: str) -> "CanonicalCode":
        return cls(bytes.fromhex(text))

    def __str__(self) -> str:
        return self.hex()


@dataclass
class _PathNode:
    labels: np.ndarray
    cell: Tuple[int, ...]
    chosen: int
    invariant: bytes


def _labels_to_perm(labels: np.ndarray) -> Permutation:
    return Permutation._unchecked(tuple(int(x) for x in labels))


class _Searcher:
    def __init__(self, gamma: ColoredDigraph, stats: Optional[SearchStats] = None):
        self.gamma = gamma
        self.n = gamma.n
        self.adjacency = gamma.matrix
        self.colors = np.asarray(gamma.colors, dtype=np.int64)
        self.stats = stats if stats is not None else SearchStats()

    def root(self) -> np.ndarray:
        return refine(self.adjacency, initial_partition(self.gamma.colors))

    def child(self, labels: np.ndarray, v: int) -> np.ndarray:
        self.stats.nodes += 1
        return refine(self.adjacency, individualize(labels, v))

    def leaf_certificate(self, labels: np.ndarray) -> bytes:
        self.stats.leaves += 1
        return certificate(self.adjacency, self.colors, labels)

    # ------------------------------------------------------------------
    # first path + automorphisms
    # ------------------------------------------------------------------
    def first_path(self) -> Tuple[List[_PathNode], np.ndarray, bytes]:
        labels = self.root()
        path: List[_PathNode] = []
        while True:
            cell_index = target_cell(labels)
            if cell_index < 0:
                break
            cell = cell_members(labels, cell_index)
            path.append(_PathNode(labels, cell, cell[0], node_invariant(self.adjacency, labels)))
            labels = self.child(labels, cell[0])
        return path, labels, self.leaf_certificate(labels)

    def find_equivalent_leaf(
        self,
        labels: np.ndarray,
        depth: int,
        path: Sequence[_PathNode],
        leaf_depth: int,
        target: bytes,
    ) -> Optional[np.ndarray]:
        """DFS below ``labels`` (at ``depth``) for a leaf with certificate ``target``."""
        if depth < leaf_depth:
            if node_invariant(self.adjacency, labels) != path[depth].invariant:
                self.stats.pruned_by_invariant += 1
                return None
        cell_index = target_cell(labels)
        if cell_index < 0:
            if depth != leaf_depth:
                return None
            return labels if self.leaf_certificate(labels) == target else None
        if depth >= leaf_depth:
            return None
        for w in cell_members(labels, cell_index):
            found = self.find_equivalent_leaf(self.child(labels, w), depth + 1, path, leaf_depth, target)
            if found is not None:
                return found
        return None

    def automorphisms(self, seed_generators: Sequence[Permutation]) -> PermGroup:
        path, first_leaf, first_cert = self.first_path()
        leaf_depth = len(path)
        first_perm = _labels_to_perm(first_leaf)
        generators: List[Permutation] = [g for g in seed_generators if not g.is_identity()]
        known = group_from_generators(self.n, generators)

        for d in range(leaf_depth - 1, -1, -1):
            node = path[d]
            prefix = [p.chosen for p in path[:d]]
            orbit = set(known.pointwise_stabilizer(prefix).orbit(node.chosen))
            for w in node.cell[1:]:
                if w in orbit:
                    self.stats.pruned_by_orbit += 1
                    continue
                leaf = self.find_equivalent_leaf(self.child(node.labels, w), d + 1, path, leaf_depth, first_cert)
                if leaf is None:
                    continue
                gamma_map = first_perm * _labels_to_perm(leaf).inverse()
                if not is_automorphism(self.gamma, gamma_map):  # pragma: no cover - equal certificates
                    raise RuntimeError("equal leaf certificates produced a non-automorphism")
                generators.append(gamma_map)
                self.stats.automorphisms += 1
                known = group_from_generators(self.n, generators)
                orbit = set(known.pointwise_stabilizer(prefix).orbit(node.chosen))
        return known

    # ------------------------------------------------------------------
    # canonical form
    # ------------------------------------------------------------------
    def canonical(self, aut: PermGroup) -> Tuple[bytes, np.ndarray]:
        best: List[Optional[Tuple[bytes, np.ndarray]]] = [None]

        def visit(labels: np.ndarray, prefix: List[int]) -> None:
            cell_index = target_cell(labels)
            if cell_index < 0:
                cert = self.leaf_certificate(labels)
                if best[0] is None or cert < best[0][0]:
                    best[0] = (cert, labels)
                return
            stab = aut.pointwise_stabilizer(prefix)
            covered: set[int] = set()
            for w in cell_members(labels, cell_index):
                if w in covered:
                    self.stats.pruned_by_orbit += 1
                    continue
                covered.update(stab.orbit(w))
                visit(self.child(labels, w), prefix + [w])

        visit(self.root(), [])
        assert best[0] is not None
        return best[0]


def _check_seed(gamma: ColoredDigraph, seed: Optional[PermGroup]) -> List[Permutation]:
    if seed is None:
        return []
    if seed.degree != gamma.n:
        raise DegreeMismatchError(f"seed group of degree {seed.degree} for a digraph on {gamma.n} vertices")
    for g in seed.generators:
        if not is_automorphism(gamma, g):
            raise PreconditionError(f"seed generator {g} is not an automorphism")
    return list(seed.generators)


def automorphism_group(
    gamma: ColoredDigraph,
    seed: Optional[PermGroup] = None,
    stats: Optional[SearchStats] = None,
) -> PermGroup:
    """Full colour- and arc-preserving automorphism group of ``gamma``.

    ``seed`` must consist of automorphisms; it only prunes the search, the
    resulting group is the same with or without it.
    """
    seed_gens = _check_seed(gamma, seed)
    if gamma.n == 0:
        return group_from_generators(0, [])
    searcher = _Searcher(gamma, stats)
    group = searcher.automorphisms(seed_gens)
    logger.debug(
        f"Aut search n={gamma.n}: order {group.order}, nodes {searcher.stats.nodes}, "
        f"new automorphisms {searcher.stats.automorphisms}"
    )
    return group


def canonical_form(gamma: ColoredDigraph, aut: Optional[PermGroup] = None) -> CanonicalCode:
    """Canonical code of ``gamma``; ``aut`` may pass a precomputed Aut(gamma)."""
    if gamma.n == 0:
        return CanonicalCode((0).to_bytes(4, "big"), ())
    if aut is None:
        aut = automorphism_group(gamma)
    searcher = _Searcher(gamma)
    cert, labels = searcher.canonical(aut)
    return CanonicalCode(cert, tuple(int(x) for x in labels))


def canonical_digraph(gamma: ColoredDigraph) -> ColoredDigraph:
    """The representative of gamma's isomorphism class given by its canonical labelling."""
    code = canonical_form(gamma)
    return gamma.relabel(Permutation.from_images(code.labeling))
