"""Automorphism groups and canonical forms of colored digraphs."""

from src.core.autgrp.search import (
    CanonicalCode,
    SearchStats,
    automorphism_group,
    canonical_digraph,
    canonical_form,
)
from src.core.autgrp.oracle import brute_force_automorphisms, brute_force_isomorphic, brute_force_isomorphism

__all__ = [
    "CanonicalCode",
    "SearchStats",
    "automorphism_group",
    "canonical_digraph",
    "canonical_form",
    "brute_force_automorphisms",
    "brute_force_isomorphic",
    "brute_force_isomorphism",
]
