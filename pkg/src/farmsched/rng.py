"""Portable 64-bit PRNG: xoshiro256** seeded through splitmix64.

Python's ``random`` and numpy's ``Generator`` methods do not promise stable
streams across versions, so the simulator carries its own generator. Every
derived variate is built from ``next_u64`` with integer operations or a
single libm call, which keeps streams identical across platforms.
"""

from __future__ import annotations

import math

MASK64 = (1 << 64) - 1
_TWO_POW_53 = float(1 << 53)


def splitmix64(state: int) -> tuple[int, int]:
    """One splitmix64 step; returns ``(new_state, output)``."""
    state = (state + 0x9E3779B97F4A7C15) & MASK64
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return state, z ^ (z >> 31)


def _rotl(x: int, k: int) -> int:
    return ((x << k) | (x >> (64 - k))) & MASK64


class Xoshiro256:
    """xoshiro256** generator.

    >>> Xoshiro256(42).randbelow(10) == Xoshiro256(42).randbelow(10)
    True
    """

    __slots__ = ("_s",)

    def __init__(self, seed: int = 0) -> None:
        if not 0 <= seed <= MASK64:
            raise ValueError("seed must be an unsigned 64-bit integer")
        state = seed
        s = []
        for _ in range(4):
            state, out = splitmix64(state)
            s.append(out)
        self._s = s

    @classmethod
    def from_state(cls, state: tuple[int, int, int, int]) -> "Xoshiro256":
        rng = cls.__new__(cls)
        if not any(state):
            raise ValueError("xoshiro state must not be all zero")
        rng._s = [x & MASK64 for x in state]
        return rng

    @property
    def state(self) -> tuple[int, int, int, int]:
        return tuple(self._s)  # type: ignore[return-value]

    def next_u64(self) -> int:
        s = self._s
        result = (_rotl((s[1] * 5) & MASK64, 7) * 9) & MASK64
        t = (s[1] << 17) & MASK64
        s[2] ^= s[0]
        s[3] ^= s[1]
        s[1] ^= s[2]
        s[0] ^= s[3]
        s[2] ^= t
        s[3] = _rotl(s[3], 45)
        return result

    def random(self) -> float:
        """Uniform double in [0, 1) from the top 53 bits."""
        return (self.next_u64() >> 11) / _TWO_POW_53

    def randbelow(self, n: int) -> int:
        """Unbiased integer in [0, n) by rejection on the 64-bit output."""
        if n <= 0:
            raise ValueError("n must be positive")
        if n > MASK64 + 1:
            raise ValueError("n exceeds 2**64")
        limit = (MASK64 + 1) - ((MASK64 + 1) % n)
        while True:
            x = self.next_u64()
            if x < limit:
                return x % n

    def randint(self, lo: int, hi: int) -> int:
        """Integer in the closed interval [lo, hi]."""
        if hi < lo:
            raise ValueError("empty range")
        return lo + self.randbelow(hi - lo + 1)

    def exponential(self, mean: float) -> float:
        # 1 - u lies in (0, 1], so the log is finite
        return -mean * math.log(1.0 - self.random())
