"""Portable in-repo pseudo-randomness built on splitmix64.

The instance generator must be bit-reproducible across machines and Python
versions, so it never touches the platform RNG.  splitmix64 is counter
based: a stream's state after k draws is ``base + k * GOLDEN (mod 2**64)``
and the k-th output is a fixed avalanche mix of that state.  That gives two
interchangeable evaluation paths:

* :class:`SplitMix64`, the scalar sequential generator;
* :func:`splitmix_block`, which evaluates whole blocks of (stream, position)
  outputs in one vectorized closed form, bit-identical to the scalar path.

Streams are derived from a single 64-bit seed with
``stream_seed(seed, side, index)``, one chained mix step per word.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4E5B9
_MIX2 = 0x94D049BB133111EB

GENERATOR_ID = "splitmix64-streams-v1"


def _splitmix64(state: int) -> tuple[int, int]:
    """One splitmix64 step: returns (next_state, output)."""
    state = (state + _GOLDEN) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * _MIX1) & MASK64
    z = ((z ^ (z >> 27)) * _MIX2) & MASK64
    return state, z ^ (z >> 31)


class SplitMix64:
    """Scalar splitmix64 stream over 64-bit unsigned integers."""

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_uint64(self) -> int:
        self._state, out = _splitmix64(self._state)
        return out

    def next_float53(self) -> float:
        """Uniform double in [0, 1) with full 53-bit resolution."""
        return (self.next_uint64() >> 11) * 2.0**-53

    def randbelow(self, bound: int) -> int:
        """Unbiased integer in [0, bound) via rejection sampling."""
        if bound <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            x = self.next_uint64()
            if x < limit:
                return x % bound

    def shuffle(self, xs: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(xs) - 1, 0, -1):
            j = self.randbelow(i + 1)
            xs[i], xs[j] = xs[j], xs[i]


def derive_seed(seed: int, *words: int) -> int:
    """Hash (seed, word, word, ...) into one well-mixed 64-bit value."""
    _, z = _splitmix64(seed & MASK64)
    for w in words:
        _, z = _splitmix64((z + w) & MASK64)
    return z


def stream_seed(seed: int, side: int, index: int) -> int:
    """Seed for one generator stream; side 0 = men, 1 = women.

    Within a side, index 0 drives the shared permutation and index i+1
    drives row i, so each matrix and each row is independently regenerable.
    """
    return derive_seed(seed, side, index)


_U30 = np.uint64(30)
_U27 = np.uint64(27)
_U31 = np.uint64(31)
_U11 = np.uint64(11)
_UGOLDEN = np.uint64(_GOLDEN)
_UMIX1 = np.uint64(_MIX1)
_UMIX2 = np.uint64(_MIX2)


def splitmix_block(base_seeds: Sequence[int], count: int) -> np.ndarray:
    """Outputs 1..count of every stream at once; row i is stream i.

    ``splitmix_block([s], k)[0]`` equals ``[SplitMix64(s).next_uint64()
    for _ in range(k)]`` bit for bit; the closed-form state
    ``base + (j+1) * GOLDEN`` replaces the sequential walk.
    """
    base = np.asarray(
        [s & MASK64 for s in base_seeds], dtype=np.uint64
    )
    steps = np.arange(1, count + 1, dtype=np.uint64) * _UGOLDEN
    z = base[:, None] + steps[None, :]
    z = (z ^ (z >> _U30)) * _UMIX1
    z = (z ^ (z >> _U27)) * _UMIX2
    return z ^ (z >> _U31)


def splitmix_block_float53(base_seeds: Sequence[int], count: int) -> np.ndarray:
    """Block of uniform doubles in [0, 1), matching the scalar float path."""
    return (splitmix_block(base_seeds, count) >> _U11) * 2.0**-53
