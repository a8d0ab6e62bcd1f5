"""Deterministic 64-bit PRNG with an explicit stream-derivation rule.

xorshift64* (shift-xor state update, odd multiplier on output).  Stream s
of seed z starts from state z XOR (s * PHI64) and discards 8 outputs as
warm-up, so repeats of an experiment get decorrelated, reproducible
streams with no external dependency.  Identical (seed, stream) pairs give
identical byte-for-byte output on every platform.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ParameterError

_MASK64 = (1 << 64) - 1
_STAR = 0x2545F4914F6CDD1D   # xorshift64* output multiplier
_PHI64 = 0x9E3779B97F4A7C15  # odd constant for stream derivation
_WARMUP = 8


@dataclass(frozen=True)
class SeedContract:
    """Identifies one reproducible sample: a 64-bit seed plus repeat index."""

    seed: int
    stream_index: int = 0

    def __post_init__(self) -> None:
        if not 0 <= self.seed < (1 << 64):
            raise ParameterError("seed must be a 64-bit unsigned integer")
        if self.stream_index < 0:
            raise ParameterError("stream index must be nonnegative")


class XorShift64Star:
    def __init__(self, seed: int, stream_index: int = 0):
        contract = SeedContract(seed, stream_index)
        state = (contract.seed ^ ((contract.stream_index * _PHI64) & _MASK64)) & _MASK64
        if state == 0:
            state = _PHI64
        self._state = state
        for _ in range(_WARMUP):
            self.next_u64()

    def next_u64(self) -> int:
        x = self._state
        x ^= x >> 12
        x ^= (x << 25) & _MASK64
        x ^= x >> 27
        self._state = x
        return (x * _STAR) & _MASK64

    def below(self, bound: int) -> int:
        """Uniform integer in [0, bound), bias-free by rejection."""
        if bound <= 0:
            raise ParameterError(f"bound must be positive, got {bound}")
        limit = (1 << 64) - ((1 << 64) % bound)
        while True:
            u = self.next_u64()
            if u < limit:
                return u % bound

    def shuffle(self, items: list) -> None:
        """In-place Fisher-Yates shuffle."""
        for i in range(len(items) - 1, 0, -1):
            j = self.below(i + 1)
            items[i], items[j] = items[j], items[i]
