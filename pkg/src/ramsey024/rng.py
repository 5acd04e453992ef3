"""Deterministic 64-bit word streams (splitmix64) with random access.

All randomness in the package flows through this primitive.  The stream for a
seed is the standard splitmix64 output sequence; word_at(seed, i) returns the
i-th word directly, without stepping through the first i-1, so any consumer
that addresses words by an index (the colex rank of a subset, a trial number,
a coordinate slot) can be sharded or replayed out of order and still produce
bit-identical results on every platform and Python version.

Bounded draws use the multiply-shift map (word * bound) >> 64.  It is
rejection-free and avoids modulo bias; the residual bias is below bound/2**64,
which is unmeasurable for the single-digit bounds used here.
"""

from __future__ import annotations

MASK64 = (1 << 64) - 1
GOLDEN = 0x9E3779B97F4A7C15
RNG_ID = "splitmix64"


def mix64(z: int) -> int:
    """splitmix64 finalizer on a 64-bit state."""
    z &= MASK64
    z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
    z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
    return z ^ (z >> 31)


def word_at(seed: int, index: int) -> int:
    """The index-th word (0-based) of the splitmix64 stream for this seed."""
    if index < 0:
        raise ValueError("stream index must be nonnegative")
    return mix64((seed + (index + 1) * GOLDEN) & MASK64)


def bounded_at(seed: int, index: int, bound: int) -> int:
    """Uniform draw from range(bound) at a stream position (multiply-shift)."""
    if bound <= 0:
        raise ValueError("bound must be positive")
    return (word_at(seed, index) * bound) >> 64


def derive_seed(seed: int, stream: int) -> int:
    """Child seed for an indexed substream (per-trial seeds and the like)."""
    return word_at(seed, stream)
