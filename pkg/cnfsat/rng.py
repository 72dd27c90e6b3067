"""
Seeded randomness for reproducible runs.

All random choices of a solver invocation or an instance generator are drawn
from a single :py:class:`DeterministicRNG`, which wraps the Mersenne Twister
(MT19937) of :py:mod:`random`. Equal seeds give equal streams on every
platform.

Per-instance seeds of an experiment are derived with :py:func:`mix_seed`, a
SplitMix64 based mixing function, so instances can be generated independently
and in any order.
"""

from __future__ import annotations

import os
import random as _random
from typing import Optional, Sequence, TypeVar

T = TypeVar("T")

_MASK64 = (1 << 64) - 1
_GOLDEN_GAMMA = 0x9E3779B97F4A7C15


def entropy_seed() -> int:
    """Draw a fresh 64 bit seed from the operating system."""
    return int.from_bytes(os.urandom(8), "big")


class DeterministicRNG:
    """
    Seeded PRNG wrapper.

    :param seed: The seed. If ``None``, a seed is drawn with
        :py:func:`entropy_seed` and is available as :py:attr:`seed`, so the
        run can be replayed.
    :type seed: Optional[int]
    """

    def __init__(self, seed: Optional[int] = None):
        self.seed: int = entropy_seed() if seed is None else seed
        self._rng = _random.Random(self.seed)

    def randbelow(self, n: int) -> int:
        """Uniform integer in ``0..n-1``."""
        return self._rng.randrange(n)

    def random(self) -> float:
        """Uniform float in ``[0, 1)``."""
        return self._rng.random()

    def coin(self) -> bool:
        """Fair coin, one bit of the stream."""
        return bool(self._rng.getrandbits(1))

    def choice(self, seq: Sequence[T]) -> T:
        """Uniform element of a non-empty sequence, drawn with :py:meth:`randbelow`."""
        return seq[self.randbelow(len(seq))]


def splitmix64(value: int) -> int:
    """The SplitMix64 finalizer on 64 bit integers."""
    value = (value + _GOLDEN_GAMMA) & _MASK64
    value = ((value ^ (value >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    value = ((value ^ (value >> 27)) * 0x94D049BB133111EB) & _MASK64
    return value ^ (value >> 31)


def mix_seed(master: int, *indices: int) -> int:
    """
    Derive a 64 bit seed from a master seed and a tuple of indices.

    Starting with ``state = splitmix64(master)``, every index ``x`` is folded
    in as ``state = splitmix64(state ^ x)``.

    :param master: The master seed of the run
    :type master: int
    :param indices: e.g. the index of the sweep point and of the instance
    :type indices: int
    :rtype: int
    """
    state = splitmix64(master & _MASK64)
    for index in indices:
        state = splitmix64(state ^ (index & _MASK64))
    return state
