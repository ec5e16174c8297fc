"""
Pruning a trained feature set down to its strongest features.
"""

import numpy as np

from ..features import FeatureSet
from ..logging import logger

DEFAULT_KEEP = 15


def prune(fs: FeatureSet, theta: np.ndarray, k: int = DEFAULT_KEEP) -> tuple[FeatureSet, np.ndarray]:
    """Keep the ``k`` features with the largest absolute weights.

    Ties go to the lower index; survivors keep their relative order.
    """
    theta = np.asarray(theta, dtype=np.float64)
    if len(theta) != len(fs):
        raise ValueError(f"{len(fs)} features but {len(theta)} weights")
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    if len(fs) < k:
        logger.warning(f"Feature set has {len(fs)} features, fewer than k={k}; not pruning")
        return fs, theta.copy()

    # Stable sort on -|θ| keeps lower indices first among equal weights
    keep = sorted(np.argsort(-np.abs(theta), kind="stable")[:k].tolist())
    return fs.select(keep), theta[keep].copy()
