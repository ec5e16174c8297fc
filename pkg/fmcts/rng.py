"""
Named random sub-streams.

Every source of randomness in fmcts is derived from one root seed and a path of
names, so that adding a consumer (or a log statement) never shifts the numbers
another consumer sees.
"""

import zlib

import numpy as np


def _key(part: str | int) -> int:
    if isinstance(part, int):
        if part < 0:
            raise ValueError(f"Stream path integers must be non-negative, got {part}")
        return part
    return zlib.crc32(part.encode("utf-8"))


def substream(seed: int, *path: str | int) -> np.random.Generator:
    """Derive an independent generator for ``path`` under ``seed``.

    Args:
        seed: Root seed of the run
        *path: Names or indices identifying the consumer, e.g. ("eval", 3, "a")

    Returns:
        A PCG64-backed generator, identical for identical (seed, path)
    """
    sequence = np.random.SeedSequence(entropy=seed, spawn_key=tuple(_key(p) for p in path))
    return np.random.Generator(np.random.PCG64(sequence))
