"""Deterministic random streams for reproducible simulation.

Python's ``random`` module does not promise cross-version stability for all
methods, and NumPy is not a dependency here, so the simulator draws from a
self-contained SplitMix64 generator.  The stream for a given (seed, label)
pair is fixed by this file alone: byte-identical output on every platform and
Python version.  The algorithm identifier ``splitmix64-v1`` is written into
CSV headers so published numbers stay checkable.

Each Monte Carlo trial gets its own substream derived from (seed, trial
index), which makes the per-trial results independent of trial order and of
how many trials ran before.
"""
from __future__ import annotations

from typing import List, Sequence, TypeVar

__all__ = ["ALGORITHM", "Stream", "substream"]

ALGORITHM = "splitmix64-v1"

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15

_T = TypeVar("_T")


def _mix(z: int) -> int:
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9 & _MASK64
    z = (z ^ (z >> 27)) * 0x94D049BB133111EB & _MASK64
    return z ^ (z >> 31)


class Stream:
    """SplitMix64 stream: 64-bit words, bounded ints, coins, shuffles."""

    def __init__(self, state: int):
        self._state = state & _MASK64

    def next_word(self) -> int:
        """Next 64-bit output word."""
        self._state = (self._state + _GAMMA) & _MASK64
        return _mix(self._state)

    def randbelow(self, n: int) -> int:
        """Uniform int in [0, n) by rejection, exactly uniform."""
        if n <= 0:
            raise ValueError(f"randbelow needs n >= 1, got {n}")
        # Reject words above the largest multiple of n to avoid modulo bias.
        limit = (1 << 64) - ((1 << 64) % n)
        while True:
            w = self.next_word()
            if w < limit:
                return w % n

    def unit(self) -> float:
        """Uniform float in [0, 1) with 53 random bits."""
        return (self.next_word() >> 11) * (2.0 ** -53)

    def coin(self, probability: float) -> bool:
        """True with the given probability; exact at 0.0 and 1.0."""
        if probability <= 0.0:
            return False
        if probability >= 1.0:
            return True
        return self.unit() < probability

    def shuffle(self, items: Sequence[_T]) -> List[_T]:
        """Fisher-Yates shuffle, returning a new list."""
        out = list(items)
        for i in range(len(out) - 1, 0, -1):
            j = self.randbelow(i + 1)
            out[i], out[j] = out[j], out[i]
        return out


def substream(seed: int, index: int) -> Stream:
    """Independent stream for (seed, index), e.g. one per Monte Carlo trial.

    The state is a two-step hash so that neighbouring seeds and indices do not
    produce correlated streams.
    """
    state = _mix((seed & _MASK64) ^ _GAMMA)
    state = _mix(state ^ (index & _MASK64) ^ 0xD6E8FEB86659FD93)
    return Stream(state)
