"""Subcorpus size distribution and random line selection.

The size k of each subcorpus is drawn with probability proportional to
``-1 / (k * ln(1 - k/n))`` over k = 1..n-1, which behaves like 1/k**2 and so
strongly favours small subcorpora. Lines are then picked uniformly without
replacement.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

MAX_SEED = 2**64 - 1


class RandomSource:
    """Seeded generator; equal (seed, key) pairs give equal draw sequences.

    ``derive(*key)`` returns an independent child stream, used to give each
    worker or each subtable cell its own reproducible generator.
    """

    def __init__(self, seed: int, key: tuple[int, ...] = ()):
        if not 0 <= seed <= MAX_SEED:
            raise ValueError("seed must be a 64-bit unsigned integer, got %r" % seed)
        self.seed = seed
        self.key = tuple(key)
        self.generator = np.random.Generator(
            np.random.PCG64(np.random.SeedSequence(seed, spawn_key=self.key))
        )

    @classmethod
    def from_entropy(cls) -> "RandomSource":
        return cls(int(np.random.SeedSequence().generate_state(1, np.uint64)[0]))

    def derive(self, *key: int) -> "RandomSource":
        return RandomSource(self.seed, self.key + tuple(key))

    def random(self) -> float:
        return float(self.generator.random())

    def __repr__(self) -> str:
        return "RandomSource(seed=%d, key=%r)" % (self.seed, self.key)


@dataclass(frozen=True)
class SizeDistribution:
    n: int
    probs: np.ndarray  # probs[k - 1] = p(k), k = 1..max(1, n - 1)
    cdf: np.ndarray = field(repr=False)

    @property
    def max_size(self) -> int:
        return len(self.probs)

    def p(self, k: int) -> float:
        return float(self.probs[k - 1])


def size_weights(n: int) -> np.ndarray:
    """Unnormalized weights for k = 1..n-1 (empty for n = 1)."""
    k = np.arange(1, n, dtype=np.float64)
    return -1.0 / (k * np.log1p(-k / n))


def size_distribution(n: int) -> SizeDistribution:
    if n < 1:
        raise ValueError("corpus size must be >= 1, got %r" % n)
    if n <= 2:
        probs = np.ones(1)
    else:
        weights = size_weights(n)
        probs = weights / weights.sum()
    cdf = np.cumsum(probs)
    cdf[-1] = 1.0
    return SizeDistribution(n, probs, cdf)


def sample_size(dist: SizeDistribution, rng: RandomSource) -> int:
    # inverse CDF; the final clamp guards against u landing on cdf[-1] exactly
    idx = int(np.searchsorted(dist.cdf, rng.random(), side="right"))
    return min(idx, dist.max_size - 1) + 1


@dataclass(frozen=True)
class Subcorpus:
    lines: tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.lines)


def draw_subcorpus(corpus, dist: SizeDistribution, rng: RandomSource) -> Subcorpus:
    """Pick k ~ dist, then k distinct line indices uniformly; ascending order."""
    if dist.n != corpus.line_count:
        raise ValueError(
            "size distribution built for %d lines, corpus has %d"
            % (dist.n, corpus.line_count)
        )
    k = sample_size(dist, rng)
    lines = rng.generator.choice(dist.n, size=k, replace=False)
    return Subcorpus(tuple(sorted(int(i) for i in lines)))


def full_subcorpus(corpus) -> Subcorpus:
    return Subcorpus(tuple(range(corpus.line_count)))
