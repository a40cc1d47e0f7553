"""Anymalign1-N: align every unigramized n-m corpus and merge the results.

For orders n, m in 1..N the corpus is rewritten so source n-grams and
target m-grams are single tokens, the aligner runs on it restricted to
single-token phrase pairs, and the joined tokens are split back into words.
The N x N cells share a total budget, either equally or in proportion to
exp(-(n - m)**2 / 2) so that cells with similar phrase lengths get more time.
"""

from __future__ import annotations

import logging
import math
from collections import Counter
from dataclasses import dataclass

import numpy as np

from .aligner import UNIGRAMS_ONLY, AlignmentCounts, Budget, run_anytime
from .corpus import Corpus, de_unigramize_phrase, unigramize
from .phrase_table import PhraseTable, estimate_features
from .sampler import RandomSource, size_distribution

log = logging.getLogger(__name__)

EQUAL = "equal"
STD_NORMAL = "std_normal"
MODES = (EQUAL, STD_NORMAL)


def _check_mode(mode: str) -> str:
    if mode not in MODES:
        raise ValueError("unknown schedule mode %r (expected one of %s)" % (mode, MODES))
    return mode


def time_weights(N: int, mode: str = STD_NORMAL) -> np.ndarray:
    """N x N cell weights summing to 1; entry [n-1, m-1] is cell (n, m)."""
    if N < 1:
        raise ValueError("N must be >= 1, got %r" % N)
    if _check_mode(mode) == EQUAL:
        return np.full((N, N), 1.0 / (N * N))
    d = np.subtract.outer(np.arange(N), np.arange(N))
    # 1/sqrt(2*pi) cancels under normalization
    w = np.exp(-0.5 * d.astype(np.float64) ** 2)
    return w / w.sum()


@dataclass(frozen=True)
class TimeSchedule:
    order: int
    seconds: tuple[tuple[int, ...], ...]
    mode: str
    total_seconds: int

    def cell(self, n: int, m: int) -> int:
        return self.seconds[n - 1][m - 1]

    @property
    def allotted_total(self) -> int:
        return sum(map(sum, self.seconds))

    def rows(self) -> list[list[str]]:
        header = ["source\\target"] + ["%d-grams" % m for m in range(1, self.order + 1)]
        body = [
            ["%d-grams" % n] + [str(v) for v in row]
            for n, row in enumerate(self.seconds, 1)
        ]
        return [header] + body


def round_half_up(x: float) -> int:
    return int(math.floor(x + 0.5))


def allot_time(N: int, total_seconds: int, mode: str = STD_NORMAL) -> TimeSchedule:
    """Seconds per cell, each rounded half-up independently.

    The cell sum may therefore differ slightly from ``total_seconds``.
    """
    if total_seconds < 1:
        raise ValueError("total time must be >= 1 second")
    w = time_weights(N, mode)
    seconds = tuple(tuple(round_half_up(total_seconds * x) for x in row) for row in w)
    return TimeSchedule(N, seconds, mode, total_seconds)


def allot_iterations(N: int, total: int, mode: str = STD_NORMAL) -> list[list[int]]:
    """Largest-remainder split of ``total`` iterations; sums to ``total`` exactly.

    Ties on the remainder go to the earlier cell in row-major order.
    """
    if total < 0:
        raise ValueError("iteration budget must be >= 0")
    quotas = (time_weights(N, mode) * total).ravel()
    base = np.floor(quotas).astype(int)
    short = total - int(base.sum())
    remainders = quotas - base
    order = sorted(range(len(quotas)), key=lambda i: (-remainders[i], i))
    for i in order[:short]:
        base[i] += 1
    return base.reshape(N, N).tolist()


def cell_budgets(N: int, budget: Budget, mode: str) -> list[list[Budget | None]]:
    """Per-cell budget; None marks a cell allotted no work."""
    if budget.is_iterations:
        grid = allot_iterations(N, budget.iterations, mode)
        return [[Budget(iterations=v) if v > 0 else None for v in row] for row in grid]
    if float(budget.seconds).is_integer():
        schedule = allot_time(N, int(budget.seconds), mode)
        return [[Budget(seconds=v) if v > 0 else None for v in row] for row in schedule.seconds]
    # sub-second totals (tests, quick runs) are split without rounding
    w = time_weights(N, mode)
    return [[Budget(seconds=budget.seconds * x) for x in row] for row in w]


def de_unigramize_counts(counts: AlignmentCounts) -> AlignmentCounts:
    out: AlignmentCounts = Counter()
    for (source, target), c in counts.items():
        out[(de_unigramize_phrase(source), de_unigramize_phrase(target))] += c
    return out


def align_cell(corpus: Corpus, n: int, m: int, budget: Budget, rng: RandomSource,
               dist=None, workers: int = 1) -> AlignmentCounts:
    """Run one (n, m) subtable and return de-unigramized counts."""
    if dist is None:
        dist = size_distribution(corpus.line_count)
    cell_corpus = unigramize(corpus, n, m)
    counts = run_anytime(cell_corpus, dist, budget, rng, UNIGRAMS_ONLY, workers)
    return de_unigramize_counts(counts)


def align_1n_counts(corpus: Corpus, N: int, budget: Budget, mode: str,
                    rng: RandomSource, workers: int = 1) -> AlignmentCounts:
    """Merged counts over all N x N cells.

    Cell (n, m) draws from ``rng.derive(n, m)``, so each cell is reproducible
    on its own whatever order the cells run in.
    """
    if N < 1:
        raise ValueError("N must be >= 1, got %r" % N)
    _check_mode(mode)
    dist = size_distribution(corpus.line_count)
    total: AlignmentCounts = Counter()
    for n, row in enumerate(cell_budgets(N, budget, mode), 1):
        for m, cell_budget in enumerate(row, 1):
            if cell_budget is None:
                continue
            counts = align_cell(corpus, n, m, cell_budget, rng.derive(n, m), dist, workers)
            log.info("cell %dx%d: %d distinct alignments", n, m, len(counts))
            total.update(counts)
    return total


def run_anymalign_1N(corpus: Corpus, N: int, budget: Budget, mode: str,
                     rng: RandomSource, workers: int = 1) -> PhraseTable:
    """Align all cells, merge, then estimate features once on the merged counts."""
    counts = align_1n_counts(corpus, N, budget, mode, rng, workers)
    if not counts:
        return PhraseTable()
    return estimate_features(counts)
