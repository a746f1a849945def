"""Seed derivation for reproducible, scheduling-independent replications.

A master seed and any number of integer keys (grid point, replication index,
stream role) are folded through SplitMix64 into a 64-bit seed.  Each derived
seed initialises its own PCG64 stream, so replications never share random
numbers no matter how they are distributed across workers.
"""
from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1

# stream roles
EDGES = 1
COUPLING = 2
EXPLORATION = 3
SYNTHETIC = 4


def splitmix64(x: int) -> int:
    """One SplitMix64 output step for state ``x`` (Steele, Lea & Flood 2014)."""
    z = (x + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def mix_seed(master: int, *keys: int) -> int:
    h = splitmix64(int(master) & MASK64)
    for key in keys:
        h = splitmix64(h ^ (int(key) & MASK64))
    return h


def generator(seed: int, role: int) -> np.random.Generator:
    """PCG64 generator for the given seed and stream role."""
    return np.random.Generator(np.random.PCG64(mix_seed(seed, role)))
