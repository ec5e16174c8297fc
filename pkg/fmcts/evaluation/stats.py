"""Confidence intervals for match scores."""

import math

from scipy.stats import norm

Z_95 = float(norm.ppf(0.975))


def wilson_interval(successes: float, n: int, z: float = Z_95) -> tuple[float, float]:
    """Wilson score interval for a proportion.

    ``successes`` may be fractional (ties count half a win).
    """
    if n < 1:
        raise ValueError("Wilson interval needs at least one trial")
    if not 0 <= successes <= n:
        raise ValueError(f"Successes {successes} outside [0, {n}]")
    p = successes / n
    z2 = z * z
    denom = 1 + z2 / n
    centre = (p + z2 / (2 * n)) / denom
    half = z * math.sqrt(p * (1 - p) / n + z2 / (4 * n * n)) / denom
    lo = 0.0 if p == 0 else max(0.0, centre - half)
    hi = 1.0 if p == 1 else min(1.0, centre + half)
    return lo, hi
