"""Small numeric helpers shared across modules."""

from __future__ import annotations

import numpy as np


def pairwise_sum(values: np.ndarray) -> float:
    """Sum a 1-D array by a fixed balanced binary tree.

    The reduction order depends only on the array length, never on how the
    work was produced or partitioned, so results are bit-reproducible.
    Adjacent elements are added pairwise; an odd trailing element is carried
    unchanged to the next level.
    """
    a = np.asarray(values, dtype=np.float64)
    if a.ndim != 1:
        raise ValueError("pairwise_sum expects a 1-D array")
    if a.size == 0:
        return 0.0
    while a.size > 1:
        if a.size % 2:
            tail = a[-1:]
            a = np.concatenate([a[:-1:2] + a[1:-1:2], tail])
        else:
            a = a[0::2] + a[1::2]
    return float(a[0])


def pairwise_sum_rows(values: np.ndarray) -> np.ndarray:
    """Tree-sum a 2-D array along axis 0 with the same order as pairwise_sum.

    Used for reducing per-node field contributions; column ``j`` of the
    result equals ``pairwise_sum(values[:, j])`` bit-for-bit.
    """
    a = np.asarray(values, dtype=np.float64)
    if a.ndim != 2:
        raise ValueError("pairwise_sum_rows expects a 2-D array")
    if a.shape[0] == 0:
        return np.zeros(a.shape[1])
    while a.shape[0] > 1:
        if a.shape[0] % 2:
            tail = a[-1:]
            a = np.concatenate([a[:-1:2] + a[1:-1:2], tail], axis=0)
        else:
            a = a[0::2] + a[1::2]
    return a[0].copy()
