"""Reproducible 64-bit generator used by :func:`landau_poisson.dist.sample`.

The stream is part of the public contract, so it is spelled out here rather
than delegated to numpy: the 256-bit state of xoshiro256** is filled with
four successive outputs of splitmix64 started at ``seed mod 2**64``, and a
uniform double on [0, 1) is ``(next() >> 11) * 2**-53``.
"""

from __future__ import annotations

import numpy as np

_MASK = (1 << 64) - 1


def splitmix64(state: int) -> tuple[int, int]:
    """One splitmix64 step. Returns ``(new_state, output)``."""
    state = (state + 0x9E3779B97F4A7C15) & _MASK
    z = state
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK
    return state, z ^ (z >> 31)


class Xoshiro256StarStar:
    """xoshiro256** (Blackman and Vigna), seeded through splitmix64."""

    def __init__(self, seed: int):
        sm = seed & _MASK
        words = []
        for _ in range(4):
            sm, out = splitmix64(sm)
            words.append(out)
        self._s = words

    def next_u64(self) -> int:
        s0, s1, s2, s3 = self._s
        x = (s1 * 5) & _MASK
        result = ((((x << 7) | (x >> 57)) & _MASK) * 9) & _MASK
        t = (s1 << 17) & _MASK
        s2 ^= s0
        s3 ^= s1
        s1 ^= s2
        s0 ^= s3
        s2 ^= t
        s3 = ((s3 << 45) | (s3 >> 19)) & _MASK
        self._s = [s0, s1, s2, s3]
        return result

    def uniforms(self, n: int) -> np.ndarray:
        """``n`` doubles on [0, 1)."""
        s0, s1, s2, s3 = self._s
        mask = _MASK
        out = [0] * n
        for i in range(n):
            x = (s1 * 5) & mask
            out[i] = (((((x << 7) | (x >> 57)) & mask) * 9) & mask) >> 11
            t = (s1 << 17) & mask
            s2 ^= s0
            s3 ^= s1
            s1 ^= s2
            s0 ^= s3
            s2 ^= t
            s3 = ((s3 << 45) | (s3 >> 19)) & mask
        self._s = [s0, s1, s2, s3]
        return np.array(out, dtype=np.float64) * (2.0 ** -53)
