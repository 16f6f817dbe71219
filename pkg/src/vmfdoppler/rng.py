"""Counter-based uniform random streams.

Every draw is a pure function of ``(seed, stream, index)``: the SplitMix64
finalizer applied twice to a Weyl-sequence counter. Any slice of a stream
can be produced on its own, so work split across workers by sample index
reproduces the single-worker output bit for bit, on any platform.
"""

from __future__ import annotations

import numpy as np

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_STREAM_MUL = np.uint64(0xD1B54A32D192ED03)
_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)
_MASK64 = 0xFFFFFFFFFFFFFFFF


def _mix(z: np.ndarray) -> np.ndarray:
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


def _key(seed: int, stream: int) -> np.ndarray:
    s = np.array([seed & _MASK64], dtype=np.uint64)
    t = np.array([stream & _MASK64], dtype=np.uint64)
    return _mix(_mix(s + _GOLDEN) ^ (t * _STREAM_MUL))


def raw_bits(seed: int, stream: int, start: int, count: int) -> np.ndarray:
    """64-bit outputs for counters ``start .. start + count - 1``."""
    if count < 0 or start < 0:
        raise ValueError("start and count must be non-negative")
    with np.errstate(over="ignore"):
        idx = np.arange(start, start + count, dtype=np.uint64) + np.uint64(1)
        z = _key(seed, stream) + idx * _GOLDEN
        return _mix(_mix(z))


def uniform(seed: int, stream: int, start: int, count: int) -> np.ndarray:
    """Doubles in the open interval (0, 1) from the top 53 bits."""
    bits = raw_bits(seed, stream, start, count) >> np.uint64(11)
    return (bits.astype(np.float64) + 0.5) * 2.0**-53
