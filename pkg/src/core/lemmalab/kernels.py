"""Numba 加速的穷举扫描"""
import numpy as np
from numba import njit


@njit(cache=True)
def count_common_fixed_masks(images):
    """Number of bitmasks over images.shape[1] points fixed by every row of ``images``.

    Row k holds the images of a permutation; a mask is fixed when the set it
    encodes is mapped onto itself.
    """
    k, n = images.shape
    count = 0
    for mask in range(1 << n):
        fixed = True
        for row in range(k):
            img = 0
            for i in range(n):
                if (mask >> i) & 1:
                    img |= 1 << images[row, i]
            if img != mask:
                fixed = False
                break
        if fixed:
            count += 1
    return count


def images_matrix(perms, degree: int) -> np.ndarray:
    rows = [p.images for p in perms] or [tuple(range(degree))]
    return np.asarray(rows, dtype=np.int64).reshape(len(rows), degree)
