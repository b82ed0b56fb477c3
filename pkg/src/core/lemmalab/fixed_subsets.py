"""不动子集计数: subsets of the points fixed setwise by one permutation."""
from __future__ import annotations

import logging
from typing import Tuple

from src.config import settings
from src.core.errors import CapExceededError, PreconditionError, VerificationFailure
from src.core.lemmalab.kernels import count_common_fixed_masks, images_matrix
from src.core.perm.permutation import Permutation

logger = logging.getLogger(__name__)

_SCAN_MAX_DEGREE = 24


def fixed_subsets_count(p: Permutation) -> Tuple[int, float]:
    """(exact, bound): exact = 2^{#cycles}, bound = 2^{|Δ| + (n - |Δ|)/2} with Δ the fixed points."""
    n = p.degree
    cap = settings.fixed_subsets_max_degree
    if n > cap:
        raise CapExceededError("degree for fixed_subsets_count", n, cap)
    exact = 1 << p.cycle_count
    delta = len(p.fixed_points)
    bound = 2.0 ** (delta + (n - delta) / 2)
    if exact > bound:
        raise VerificationFailure(f"{p} fixes {exact} subsets, above the bound {bound}")
    return exact, bound


def scan_fixed_subsets(p: Permutation) -> int:
    """Exhaustive count over all 2^n subsets."""
    if p.degree > _SCAN_MAX_DEGREE:
        raise CapExceededError("degree for scan_fixed_subsets", p.degree, _SCAN_MAX_DEGREE)
    return int(count_common_fixed_masks(images_matrix([p], p.degree)))


def few_fixed_points_bound(p: Permutation) -> float:
    """2^{3n/4}; valid whenever p fixes at most n/2 points."""
    n = p.degree
    if 2 * len(p.fixed_points) > n:
        raise PreconditionError(f"{p} fixes more than half of its {n} points")
    return 2.0 ** (3 * n / 4)
