"""Seedable random source used by every sampler.

The bit stream is MT19937 as implemented by :class:`random.Random` seeded
with a non-negative integer, which is specified bit-for-bit and identical on
all platforms.  Everything built on top of it (coin flips, exact uniform
integers below big bounds, 53-bit floats, child seeds) is defined here
rather than delegated to ``random.Random`` helpers, so the derived streams
are pinned by this module and not by the interpreter version.

Child seeds for sample ``i`` of a run are ``splitmix64(seed + i)``.
"""
from __future__ import annotations

import random

MASK64 = (1 << 64) - 1


def splitmix64(x: int) -> int:
    z = (x + 0x9E3779B97F4A7C15) & MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def child_seed(seed: int, index: int) -> int:
    return splitmix64((seed + index) & MASK64)


class Rng:
    def __init__(self, seed: int = 0):
        if seed < 0:
            raise ValueError("seed must be non-negative")
        self.seed = seed
        self._mt = random.Random(seed)
        self._bits = 0
        self._nbits = 0

    def getrandbits(self, k: int) -> int:
        return self._mt.getrandbits(k) if k else 0

    def coin(self) -> bool:
        """Fair coin, consuming one bit of a buffered 64-bit word."""
        if not self._nbits:
            self._bits = self._mt.getrandbits(64)
            self._nbits = 64
        bit = self._bits & 1
        self._bits >>= 1
        self._nbits -= 1
        return bool(bit)

    def coins(self) -> tuple[int, int]:
        """A fresh 64-bit word of coin flips (``(bits, 64)``)."""
        return self._mt.getrandbits(64), 64

    def randbelow(self, n: int) -> int:
        """Exactly uniform integer in ``[0, n)`` by bit-length rejection."""
        if n <= 0:
            raise ValueError("randbelow needs a positive bound")
        k = n.bit_length()
        while True:
            r = self._mt.getrandbits(k)
            if r < n:
                return r

    def random(self) -> float:
        """Uniform float in ``[0, 1)`` with 53 random bits."""
        return self._mt.getrandbits(53) * (1.0 / (1 << 53))

    def choose(self, weights) -> int:
        """Index chosen with probability proportional to integer ``weights``."""
        pick = self.randbelow(sum(weights))
        for i, w in enumerate(weights):
            if pick < w:
                return i
            pick -= w
        raise AssertionError("unreachable")

    def spawn(self, index: int) -> "Rng":
        return Rng(child_seed(self.seed, index))
