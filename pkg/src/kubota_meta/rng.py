"""Deterministic pseudorandom numbers for the self-test suites.

A SplitMix64 generator is embedded rather than relying on the stdlib
``random`` module so that witnesses are reproducible bit-for-bit across
platforms and Python versions, and so that every named check can derive
its own independent stream from one master seed.
"""

from __future__ import annotations

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 PRNG (Steele, Lea, Flood 2014). 64-bit state, 64-bit output."""

    __slots__ = ("_state",)

    def __init__(self, seed: int) -> None:
        self._state = seed & _MASK64

    def next_u64(self) -> int:
        self._state = (self._state + 0x9E3779B97F4A7C15) & _MASK64
        z = self._state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def randint(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi], inclusive on both ends.

        Plain modular reduction: the ranges used here are tiny compared to
        2**64, so the bias is far below anything observable, and keeping the
        consumption rate at exactly one draw per call keeps streams stable.
        """
        return lo + self.next_u64() % (hi - lo + 1)

    def chance(self, num: int, den: int) -> bool:
        """True with probability num/den."""
        return self.next_u64() % den < num

    def choice(self, seq):
        return seq[self.next_u64() % len(seq)]


def fnv1a_64(text: str) -> int:
    """FNV-1a hash of a string; stable across runs, unlike builtin hash()."""
    h = 0xCBF29CE484222325
    for byte in text.encode("utf-8"):
        h = ((h ^ byte) * 0x100000001B3) & _MASK64
    return h


def derive_seed(master: int, *labels: str) -> int:
    """Mix a master seed with string labels into an independent stream seed."""
    h = master & _MASK64
    for label in labels:
        h = (h * 0x9E3779B97F4A7C15 + fnv1a_64(label)) & _MASK64
    # one scramble round so adjacent masters do not give adjacent streams
    return SplitMix64(h).next_u64()
