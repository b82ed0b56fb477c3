"""Executable checks of the counting lemmas behind the census, plus verify suites."""

from src.core.lemmalab.fixed_subsets import few_fixed_points_bound, fixed_subsets_count, scan_fixed_subsets
from src.core.lemmalab.invariant_digraphs import (
    arc_orbit_count,
    arc_permutation,
    count_invariant_digraphs,
    invariant_digraph_count,
)
from src.core.lemmalab.fixing import (
    FixingWitness,
    PartitionFixingReport,
    in_phi,
    partition_fixing_check,
    phi_census,
    restrict_to_cell,
    restricted_group,
    sigma,
)
from src.core.lemmalab.suite import SUITES, VerifyReport, run_suites

__all__ = [
    "few_fixed_points_bound",
    "fixed_subsets_count",
    "scan_fixed_subsets",
    "arc_orbit_count",
    "arc_permutation",
    "count_invariant_digraphs",
    "invariant_digraph_count",
    "FixingWitness",
    "PartitionFixingReport",
    "in_phi",
    "partition_fixing_check",
    "phi_census",
    "restrict_to_cell",
    "restricted_group",
    "sigma",
    "SUITES",
    "VerifyReport",
    "run_suites",
]
