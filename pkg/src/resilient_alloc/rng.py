"""Deterministic 64-bit random generator used by the simulator.

SplitMix64 is tiny, fully specified, and trivial to reimplement bit-exactly,
which keeps simulation reports reproducible for a given seed. The generator
name is recorded in every report so a reader can tell which algorithm
produced the stream.
"""

from __future__ import annotations

from fractions import Fraction

RNG_NAME = "splitmix64"

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15


class SplitMix64:
    """SplitMix64 sequence starting from a 64-bit seed."""

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GAMMA) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def uniform(self, low: Fraction, high: Fraction) -> Fraction:
        """Exact rational sample in [low, high), uniform over a 2**64 grid."""
        return low + (high - low) * Fraction(self.next_u64(), 1 << 64)
