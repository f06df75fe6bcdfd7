"""Seedable 64-bit generator (SplitMix64) used everywhere randomness is needed.

SplitMix64 is the fixed reference generator of this package: every sampled
statistic is a pure function of the seed, independent of platform, hash
randomization, and execution interleaving.  Trial number ``i`` of a batch
draws from the stream ``substream(seed, i)`` so batches can be evaluated in
any order (or concurrently) and still reproduce bit-for-bit.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def mix64(z: int) -> int:
    """One SplitMix64 output step applied to a raw 64-bit value."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return (z ^ (z >> 31)) & MASK64


class SplitMix64:
    """The SplitMix64 sequence: state += golden gamma; output = mix64(state)."""

    __slots__ = ("_state",)

    def __init__(self, seed: int):
        self._state = seed & MASK64

    def next_u64(self) -> int:
        self._state = (self._state + _GOLDEN) & MASK64
        return mix64(self._state)

    def below(self, bound: int) -> int:
        """Uniform-ish integer in [0, bound) via 64-bit scaling.

        The scaling map floor(u * bound / 2^64) has bias at most bound/2^64,
        negligible for the desk-scale bounds used here and, unlike rejection,
        consumes exactly one draw per call (keeps streams aligned).
        """
        return (self.next_u64() * bound) >> 64

    def randint(self, lo: int, hi: int) -> int:
        """Uniform-ish integer in [lo, hi] inclusive."""
        return lo + self.below(hi - lo + 1)


def substream(seed: int, index: int) -> SplitMix64:
    """Independent stream for trial `index` of a batch seeded with `seed`."""
    return SplitMix64(mix64((seed & MASK64) ^ mix64(index + 1)))
