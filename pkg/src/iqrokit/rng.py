"""Portable deterministic randomness for quiz generation.

splitmix64 is the generator: tiny state, trivially portable, and with
published reference outputs, so question transcripts can be reproduced
bit-for-bit by any other implementation that follows the same three steps:

    state = (state + 0x9E3779B97F4A7C15) mod 2^64
    z = (state ^ (state >> 30)) * 0xBF58476D1CE4E5B9   (mod 2^64)
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB            (mod 2^64)
    output = z ^ (z >> 31)

Bounded draws use rejection sampling (no modulo bias), shuffles are
Fisher-Yates driven by those draws.
"""

from __future__ import annotations

from typing import Sequence, TypeVar

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15

T = TypeVar("T")


class SplitMix64:
    """splitmix64 stream seeded with a 64-bit integer."""

    def __init__(self, seed: int):
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        """Advance the stream and return the next 64-bit output."""
        self._state = (self._state + _GOLDEN) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        """Uniform integer in [0, n), by rejection of the biased tail."""
        if n <= 0:
            raise ValueError("bound must be positive")
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % n

    def shuffled(self, items: Sequence[T]) -> list[T]:
        """Return a new list holding a Fisher-Yates shuffle of ``items``."""
        out = list(items)
        for i in range(len(out) - 1, 0, -1):
            j = self.below(i + 1)
            out[i], out[j] = out[j], out[i]
        return out
