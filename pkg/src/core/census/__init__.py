"""Censuses of Cayley digraphs, structural flags and bound evaluators."""

from src.core.census.records import (
    CSV_HEADER,
    CensusRecord,
    CensusSummary,
    Classification,
    Tallies,
    summary_from_tallies,
)
from src.core.census.classify import cayley_automorphisms, classify
from src.core.census.orbits import aut_orbit_representatives, encoding_images, min_labels
from src.core.census.checkpoint import CensusCheckpoint
from src.core.census.runner import (
    UnlabelledCounts,
    binomial_half_width,
    exact_census,
    sample_subsets,
    sampled_census,
    unlabelled_census,
    unlabelled_summary,
)
from src.core.census.hypotheses import HypothesisReport, OvergroupFlags, hypothesis_flags, overgroup_flags
from src.core.census.bounds import BoundKind, BoundParams, BoundTerms, bound_eval, bound_terms, exact_log2

__all__ = [
    "CSV_HEADER",
    "CensusRecord",
    "CensusSummary",
    "Classification",
    "Tallies",
    "summary_from_tallies",
    "cayley_automorphisms",
    "classify",
    "aut_orbit_representatives",
    "encoding_images",
    "min_labels",
    "CensusCheckpoint",
    "UnlabelledCounts",
    "binomial_half_width",
    "exact_census",
    "sample_subsets",
    "sampled_census",
    "unlabelled_census",
    "unlabelled_summary",
    "HypothesisReport",
    "OvergroupFlags",
    "hypothesis_flags",
    "overgroup_flags",
    "BoundKind",
    "BoundParams",
    "BoundTerms",
    "bound_eval",
    "bound_terms",
    "exact_log2",
]
