"""Block partitions, quotient digraphs and the partition-fixing subgroup."""

from src.core.quotient.partition import BlockPartition, partition_from_labels
from src.core.quotient.quotients import (
    arc_count_matrix,
    block_stabilizer,
    cell_action_kernel,
    conjugate_intersection,
    coset_partition,
    induced_cell_permutation,
    normal_quotient,
    odd_connection_set,
    odd_fibre_bound,
    odd_fibre_size,
    odd_quotient,
    parity_subset_counts,
    product_set,
    stabilizer_identity_holds,
    subgroup_fixing_partition,
)

__all__ = [
    "BlockPartition",
    "partition_from_labels",
    "arc_count_matrix",
    "block_stabilizer",
    "cell_action_kernel",
    "conjugate_intersection",
    "coset_partition",
    "induced_cell_permutation",
    "normal_quotient",
    "odd_connection_set",
    "odd_fibre_bound",
    "odd_fibre_size",
    "odd_quotient",
    "parity_subset_counts",
    "product_set",
    "stabilizer_identity_holds",
    "subgroup_fixing_partition",
]
