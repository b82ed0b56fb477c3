"""Aut(R)-orbits on connection sets, by vectorised minimum-label propagation.

Every subset of R is its integer encoding x in 0..2^r-1; the representative
of an orbit is its smallest encoding.
"""
from __future__ import annotations

import logging
from typing import Sequence, Tuple

import numpy as np

from src.config import settings
from src.core.errors import CapExceededError
from src.core.groups.finite_group import FiniteGroup
from src.core.groups.structure import automorphism_group_of
from src.core.perm.permutation import Permutation

logger = logging.getLogger(__name__)


def encoding_images(phi: Permutation, r: int) -> np.ndarray:
    """images[x] = encoding of (subset x)^phi, for every x."""
    x = np.arange(1 << r, dtype=np.int64)
    out = np.zeros_like(x)
    for i in range(r):
        out |= ((x >> i) & 1) << phi.images[i]
    return out


def min_labels(r: int, generators: Sequence[Permutation]) -> np.ndarray:
    """labels[x] = smallest encoding in the orbit of x under <generators>."""
    labels = np.arange(1 << r, dtype=np.int64)
    images = [encoding_images(g, r) for g in generators]
    while True:
        updated = labels
        for img in images:
            updated = np.minimum(updated, updated[img])
        updated = updated[updated]
        if np.array_equal(updated, labels):
            return labels
        labels = updated


def aut_orbit_representatives(R: FiniteGroup) -> Tuple[np.ndarray, np.ndarray]:
    """(representatives ascending, orbit sizes) of Aut(R) acting on the 2^r subsets."""
    cap = settings.exact_census_cap
    if R.order > cap:
        raise CapExceededError("r for orbit representatives", R.order, cap)
    aut = automorphism_group_of(R)
    labels = min_labels(R.order, aut.generators)
    sizes = np.bincount(labels, minlength=1 << R.order)
    reps = np.flatnonzero(labels == np.arange(1 << R.order))
    logger.debug(f"{R.name}: {reps.size} Aut(R)-orbits on {1 << R.order} subsets (|Aut(R)| = {aut.order})")
    return reps.astype(np.int64), sizes[reps].astype(np.int64)
