"""Seed derivation and uniform variate streams.

Everything random in this package is a pure function of a 64-bit seed.
Child seeds come from a splitmix64-style avalanche mix, and uniform
variates take the top 53 bits of the finalizer output over 2^53, so a
given (seed, index) pair maps to the same coordinate on every platform
and under any execution order.
"""

from __future__ import annotations

import numpy as np

MASK64 = (1 << 64) - 1

# splitmix64 increment and finalizer multipliers.
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

_U53 = float(1 << 53)


def mix(seed: int, index: int) -> int:
    """Derive the index-th child seed of ``seed``.

    This is the (index+1)-th splitmix64 output of a stream started at
    ``seed``.  Replication masters, per-cell streams, and restart seeds
    are all derived through this one function, each layer feeding its
    own output back in as the next layer's seed.
    """
    if index < 0:
        raise ValueError("index must be >= 0")
    z = (seed + (index + 1) * _GAMMA) & MASK64
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return z ^ (z >> 31)


def _finalize(z: np.ndarray) -> np.ndarray:
    # uint64 arithmetic wraps mod 2^64, matching the scalar path.
    z = (z ^ (z >> np.uint64(30))) * np.uint64(_MIX1)
    z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
    return z ^ (z >> np.uint64(31))


def child_seeds(seed: int, count: int) -> np.ndarray:
    """Vectorized ``mix``: uint64 array of mix(seed, 0..count-1)."""
    idx = np.arange(1, count + 1, dtype=np.uint64)
    return _finalize(np.uint64(seed & MASK64) + idx * np.uint64(_GAMMA))


def uniforms(seed: int, count: int) -> np.ndarray:
    """First ``count`` uniforms of the stream: mix output >> 11, over 2^53.

    Values lie in [0, 1 - 2^-53]; the upper end of [0, 1) is never hit.
    """
    return to_uniform(child_seeds(seed, count))


def stream_uniforms(seeds: np.ndarray, count: int) -> np.ndarray:
    """``count`` uniforms from each stream seed; shape (len(seeds), count)."""
    idx = np.arange(1, count + 1, dtype=np.uint64)
    z = seeds[:, None] + idx[None, :] * np.uint64(_GAMMA)
    return to_uniform(_finalize(z))


def to_uniform(z: np.ndarray) -> np.ndarray:
    return (z >> np.uint64(11)).astype(np.float64) / _U53
