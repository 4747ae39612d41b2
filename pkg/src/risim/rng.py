"""Deterministic stream derivation for all stochastic operations.

Every random draw in the package goes through a generator obtained from
``substream(seed, label, *indices)``, so results are reproducible and
independent of execution order across unrelated operations.
"""

import zlib

import numpy as np

_MASK64 = (1 << 64) - 1


def substream(seed: int, label: str, *indices: int) -> np.random.Generator:
    """Return a PCG64 generator keyed by (seed, purpose label, indices)."""
    key = zlib.crc32(label.encode("ascii"))
    entropy = (int(seed) & _MASK64, key, *(int(i) for i in indices))
    return np.random.default_rng(np.random.SeedSequence(entropy))
