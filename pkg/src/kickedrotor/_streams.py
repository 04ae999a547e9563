"""Deterministic, schedule-independent random streams.

Every Monte-Carlo draw in this package is a pure function of
``(seed, stream index, draw index)`` through a splitmix64 hash, so results
never depend on evaluation order, chunking, or worker count.
"""

from __future__ import annotations

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)
_U64_MASK = np.uint64(0xFFFFFFFFFFFFFFFF)


def _splitmix64(state: np.ndarray) -> np.ndarray:
    """One splitmix64 output per element of a uint64 state array."""
    z = (state + _GOLDEN) & _U64_MASK
    z = ((z ^ (z >> np.uint64(30))) * _MIX1) & _U64_MASK
    z = ((z ^ (z >> np.uint64(27))) * _MIX2) & _U64_MASK
    return z ^ (z >> np.uint64(31))


def mix64(seed: int, *parts: int) -> int:
    """Stable 64-bit hash of a seed plus integer coordinates."""
    state = np.uint64(seed & 0xFFFFFFFFFFFFFFFF)
    with np.errstate(over="ignore"):
        for p in parts:
            state = (state ^ np.uint64(p & 0xFFFFFFFFFFFFFFFF)) & _U64_MASK
            state = _splitmix64(np.atleast_1d(state))[0]
    return int(state)


def unit_uniform_batch(seed: int, draw: int, start: int, count: int) -> np.ndarray:
    """float64 in [0, 1), one per stream index ``start..start+count-1``.

    Index ``i`` always receives the same value for a given (seed, draw),
    regardless of how the batch is split across calls or workers.
    """
    idx = np.arange(start, start + count, dtype=np.uint64)
    with np.errstate(over="ignore"):
        state = idx * np.uint64(0x2545F4914F6CDD1D)
        state ^= np.uint64(mix64(seed, draw))
        bits = _splitmix64(state)
    # 53-bit mantissa -> [0, 1)
    return (bits >> np.uint64(11)).astype(np.float64) * (1.0 / 9007199254740992.0)


def generator_for(seed: int, *parts: int) -> np.random.Generator:
    """A numpy Generator seeded from the stable hash of (seed, parts)."""
    return np.random.default_rng(mix64(seed, *parts))
