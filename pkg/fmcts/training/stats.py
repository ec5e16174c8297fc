"""Correlation helpers."""

from collections.abc import Sequence

import numpy as np


def pearson(u: Sequence[float] | np.ndarray, v: Sequence[float] | np.ndarray) -> float:
    """Sample Pearson correlation; 0 when either series is constant.

    Raises:
        ValueError: If the series differ in length or have fewer than two entries
    """
    x = np.asarray(u, dtype=np.float64)
    y = np.asarray(v, dtype=np.float64)
    if x.shape != y.shape:
        raise ValueError(f"Series lengths differ: {len(x)} vs {len(y)}")
    if len(x) < 2:
        raise ValueError("Pearson correlation needs at least two observations")
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        return 0.0
    r = float(np.corrcoef(x, y)[0, 1])
    return max(-1.0, min(1.0, r))
