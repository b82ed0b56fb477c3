"""颜色细化 (colour refinement) on ordered partitions.

A partition is an int64 label array: ``labels[v]`` is the index of the cell
holding v, cells numbered 0..k-1 in order. Every step is equivariant: the
new labels depend only on the old labels and the arcs, never on vertex
names, so the same ordered partition comes out for any relabelled input.
"""
from __future__ import annotations

from typing import Tuple

import numpy as np


def cell_count(labels: np.ndarray) -> int:
    return int(labels.max()) + 1 if labels.size else 0


def refine(adjacency: np.ndarray, labels: np.ndarray) -> np.ndarray:
    """Split cells by (cell, loop, out-counts per cell, in-counts per cell) until stable.

    The signature starts with the current cell index, so cells only split in
    place and the relative order of existing cells is kept.
    """
    n = adjacency.shape[0]
    if n == 0:
        return labels.astype(np.int64)
    loops = np.diagonal(adjacency).astype(np.int64)
    labels = labels.astype(np.int64)
    k = cell_count(labels)
    while True:
        onehot = np.zeros((n, k), dtype=np.int64)
        onehot[np.arange(n), labels] = 1
        out_counts = adjacency @ onehot
        in_counts = adjacency.T @ onehot
        signature = np.column_stack([labels, loops, out_counts, in_counts])
        _, new_labels = np.unique(signature, axis=0, return_inverse=True)
        new_labels = new_labels.reshape(-1).astype(np.int64)
        new_k = cell_count(new_labels)
        if new_k == k:
            return new_labels
        labels, k = new_labels, new_k


def initial_partition(colors: Tuple[int, ...]) -> np.ndarray:
    return np.asarray(colors, dtype=np.int64)


def individualize(labels: np.ndarray, v: int) -> np.ndarray:
    """Give v its own cell, placed directly before the rest of its old cell."""
    c = labels[v]
    out = labels.copy()
    out[labels > c] += 1
    out[labels == c] += 1
    out[v] = c
    return out


def target_cell(labels: np.ndarray) -> int:
    """First smallest non-singleton cell, or -1 when the partition is discrete."""
    sizes = np.bincount(labels)
    candidates = np.flatnonzero(sizes > 1)
    if candidates.size == 0:
        return -1
    smallest = sizes[candidates].min()
    return int(candidates[sizes[candidates] == smallest][0])


def cell_members(labels: np.ndarray, cell: int) -> Tuple[int, ...]:
    return tuple(int(v) for v in np.flatnonzero(labels == cell))


def node_invariant(adjacency: np.ndarray, labels: np.ndarray) -> bytes:
    """Cell sizes plus the quotient arc-count matrix of an equitable partition."""
    n = adjacency.shape[0]
    k = cell_count(labels)
    sizes = np.bincount(labels, minlength=k)
    onehot = np.zeros((n, k), dtype=np.int64)
    onehot[np.arange(n), labels] = 1
    # arcs from cell i into cell j, summed over the cell
    quotient = onehot.T @ adjacency @ onehot
    return sizes.astype(np.int64).tobytes() + quotient.astype(np.int64).tobytes()


def certificate(adjacency: np.ndarray, colors: np.ndarray, labels: np.ndarray) -> bytes:
    """Byte string of the digraph relabelled so that vertex v sits at position labels[v]."""
    n = adjacency.shape[0]
    order = np.empty(n, dtype=np.int64)
    order[labels] = np.arange(n)
    permuted = adjacency[np.ix_(order, order)].astype(np.uint8)
    head = n.to_bytes(4, "big") + np.asarray(colors[order], dtype=">u2").tobytes()
    return head + np.packbits(permuted, axis=None).tobytes()
