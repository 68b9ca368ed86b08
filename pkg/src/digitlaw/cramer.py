"""Cramer-model pseudo-random primes with reproducible seeded streams.

Each integer k >= 3 is included independently with probability 1/ln k.
The random stream is a counter-based generator (Philox) keyed by
(seed, block-index) over fixed, absolutely-aligned blocks of k values, so
runs are bit-reproducible across platforms and blocks can be generated in
parallel or out of order without changing the result.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "CramerRun",
    "GENERATOR_VERSION",
    "BLOCK_SIZE",
    "cramer_sequence",
    "expected_count",
]

GENERATOR_VERSION = "philox4x64-v1"

# urns per random block; block b covers k in [b*BLOCK_SIZE, (b+1)*BLOCK_SIZE)
BLOCK_SIZE = 2**22

# urns 1 and 2 are excluded by default: 1/ln 1 is undefined and 1/ln 2 > 1
FIRST_URN = 3


@dataclass(frozen=True)
class CramerRun:
    """One realization of the model: deterministic in (seed, ceiling)."""

    seed: int
    ceiling: int
    pseudo_primes: np.ndarray
    include_two: bool = False

    @property
    def count(self) -> int:
        return int(self.pseudo_primes.size)

    def manifest(self) -> dict:
        """Provenance record to accompany any exported pseudo-prime list."""
        return {
            "seed": self.seed,
            "ceiling": self.ceiling,
            "generator_version": GENERATOR_VERSION,
            "count": self.count,
        }


def _block_uniforms(seed: int, block_index: int) -> np.ndarray:
    key = np.array([seed, block_index], dtype=np.uint64)
    rng = np.random.Generator(np.random.Philox(key=key))
    return rng.random(BLOCK_SIZE)


def cramer_sequence(N: int, seed: int, include_two: bool = False) -> CramerRun:
    """Draw the pseudo-primes in [3, N]; identical (N, seed) repeat exactly.

    include_two forces 2 into the output (probability-one urn), a knob for
    comparisons against the actual primes; it is off by default.
    """
    N = int(N)
    if N < FIRST_URN:
        raise ValueError(f"N must be >= {FIRST_URN}, got {N}")
    if not 0 <= int(seed) < 2**64:
        raise ValueError("seed must fit in 64 bits")
    parts: list[np.ndarray] = []
    if include_two:
        parts.append(np.array([2], dtype=np.int64))
    first_block = FIRST_URN // BLOCK_SIZE
    last_block = N // BLOCK_SIZE
    for b in range(first_block, last_block + 1):
        block_lo = b * BLOCK_SIZE
        lo = max(FIRST_URN, block_lo)
        hi = min(N, (b + 1) * BLOCK_SIZE - 1)
        if lo > hi:
            continue
        u = _block_uniforms(int(seed), b)[lo - block_lo : hi - block_lo + 1]
        ks = np.arange(lo, hi + 1, dtype=np.int64)
        parts.append(ks[u < 1.0 / np.log(ks)])
    return CramerRun(int(seed), N, np.concatenate(parts), include_two)


def expected_count(N: int) -> float:
    """E[number of pseudo-primes <= N] = sum_{k=3}^{N} 1/ln k."""
    if N < FIRST_URN:
        raise ValueError(f"N must be >= {FIRST_URN}, got {N}")
    total = 0.0
    for lo in range(FIRST_URN, N + 1, 2**24):
        hi = min(N, lo + 2**24 - 1)
        ks = np.arange(lo, hi + 1, dtype=np.float64)
        total += float(np.sum(1.0 / np.log(ks)))
    return total
