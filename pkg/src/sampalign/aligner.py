"""Signature-based sub-sentential alignment over random subcorpora.

Within one subcorpus every word gets a signature: the lines it occurs on,
with its occurrence count on each. Source and target words sharing a
signature form a group, and on every line of that signature the group's
source words and target words, read in sentence order, are emitted as one
phrase pair. Repeating this over many random subcorpora and counting the
emissions is an anytime process: it can stop after any subcorpus.
"""

from __future__ import annotations

import logging
import time
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional

from .corpus import Corpus, Tokens
from .sampler import RandomSource, SizeDistribution, Subcorpus, draw_subcorpus

log = logging.getLogger(__name__)

Signature = tuple[tuple[int, int], ...]
Alignment = tuple[Tokens, Tokens]
# AlignmentCounts: Counter mapping Alignment -> number of emissions
AlignmentCounts = Counter

PROGRESS_INTERVAL = 10.0


@dataclass(frozen=True)
class PhraseLengthFilter:
    """Maximum phrase length in tokens on each side; None means unbounded."""

    max_source_tokens: Optional[int] = None
    max_target_tokens: Optional[int] = None

    def __post_init__(self):
        for bound in (self.max_source_tokens, self.max_target_tokens):
            if bound is not None and bound < 1:
                raise ValueError("phrase length bounds must be >= 1, got %r" % bound)

    def accepts(self, source_len: int, target_len: int) -> bool:
        return (self.max_source_tokens is None or source_len <= self.max_source_tokens) and (
            self.max_target_tokens is None or target_len <= self.max_target_tokens
        )


UNBOUNDED = PhraseLengthFilter()
UNIGRAMS_ONLY = PhraseLengthFilter(1, 1)


@dataclass(frozen=True)
class Budget:
    """Either a number of subcorpora or a wall-clock allowance in seconds."""

    iterations: Optional[int] = None
    seconds: Optional[float] = None

    def __post_init__(self):
        if (self.iterations is None) == (self.seconds is None):
            raise ValueError("exactly one of iterations or seconds must be given")
        if self.iterations is not None and self.iterations < 0:
            raise ValueError("iteration budget must be >= 0")
        if self.seconds is not None and not self.seconds > 0:
            raise ValueError("time budget must be > 0 seconds")

    @property
    def is_iterations(self) -> bool:
        return self.iterations is not None


@dataclass
class SignatureGroup:
    signature: Signature
    source_words: set
    target_words: set


def side_signatures(sentences: Iterable[Tokens]) -> dict[str, Signature]:
    """Map each word to its (position, count) occurrence profile over ``sentences``."""
    profile: dict[str, list[tuple[int, int]]] = defaultdict(list)
    for pos, tokens in enumerate(sentences):
        for word, count in Counter(tokens).items():
            profile[word].append((pos, count))
    return {word: tuple(occ) for word, occ in profile.items()}


def compute_signatures(corpus: Corpus, sub: Subcorpus):
    """Return (source signatures, target signatures) for the subcorpus lines.

    Positions in a signature index into ``sub.lines``, not the corpus.
    """
    pairs = [corpus.pairs[i] for i in sub.lines]
    return (
        side_signatures(src for src, _ in pairs),
        side_signatures(tgt for _, tgt in pairs),
    )


def signature_groups(corpus: Corpus, sub: Subcorpus) -> list[SignatureGroup]:
    """Partition the subcorpus vocabulary (both sides) by signature."""
    source_sigs, target_sigs = compute_signatures(corpus, sub)
    groups: dict[Signature, SignatureGroup] = {}
    for words, side in ((source_sigs, 0), (target_sigs, 1)):
        for word, sig in words.items():
            group = groups.get(sig)
            if group is None:
                group = groups[sig] = SignatureGroup(sig, set(), set())
            (group.source_words if side == 0 else group.target_words).add(word)
    return list(groups.values())


def _contiguous_phrase(tokens: Tokens, members: set) -> Optional[Tokens]:
    positions = [i for i, tok in enumerate(tokens) if tok in members]
    if positions[-1] - positions[0] != len(positions) - 1:
        return None
    return tokens[positions[0]:positions[-1] + 1]


def extract_alignments(corpus: Corpus, sub: Subcorpus, filter=UNBOUNDED) -> AlignmentCounts:
    """Count the phrase pairs one subcorpus yields.

    Groups lacking either side are dropped. A line whose group tokens are
    not one contiguous span on each side emits nothing for that group.
    """
    delta: AlignmentCounts = Counter()
    for group in signature_groups(corpus, sub):
        if not group.source_words or not group.target_words:
            continue
        for pos, _ in group.signature:
            src, tgt = corpus.pairs[sub.lines[pos]]
            src_phrase = _contiguous_phrase(src, group.source_words)
            if src_phrase is None:
                continue
            tgt_phrase = _contiguous_phrase(tgt, group.target_words)
            if tgt_phrase is None:
                continue
            if filter.accepts(len(src_phrase), len(tgt_phrase)):
                delta[(src_phrase, tgt_phrase)] += 1
    return delta


def _align_loop(corpus, dist, budget, rng, filter) -> AlignmentCounts:
    counts: AlignmentCounts = Counter()
    done = 0
    start = last_report = time.monotonic()
    deadline = None if budget.is_iterations else start + budget.seconds
    try:
        while True:
            if budget.is_iterations:
                if done >= budget.iterations:
                    break
            else:
                now = time.monotonic()
                if now >= deadline:
                    break
                if now - last_report >= PROGRESS_INTERVAL:
                    log.info("%d subcorpora, %d distinct alignments", done, len(counts))
                    last_report = now
            counts.update(extract_alignments(corpus, draw_subcorpus(corpus, dist, rng), filter))
            done += 1
    except KeyboardInterrupt:
        log.warning("interrupted after %d subcorpora; keeping alignments so far", done)
    return counts


def _worker(args):
    corpus, dist, budget, seed, key, filter = args
    return _align_loop(corpus, dist, budget, RandomSource(seed, key), filter)


def split_iterations(total: int, workers: int) -> list[int]:
    base, extra = divmod(total, workers)
    return [base + (1 if i < extra else 0) for i in range(workers)]


def run_anytime(
    corpus: Corpus,
    dist: SizeDistribution,
    budget: Budget,
    rng: RandomSource,
    filter: PhraseLengthFilter = UNBOUNDED,
    workers: int = 1,
) -> AlignmentCounts:
    """Draw and align subcorpora until the budget runs out or on Ctrl-C.

    With an iteration budget the result depends only on the corpus, the
    seed, the budget, the filter and the worker count. Several workers each
    get a stream derived from ``rng`` and an even share of the iterations;
    wall-clock runs are not reproducible.
    """
    if workers < 1:
        raise ValueError("workers must be >= 1")
    if workers == 1:
        return _align_loop(corpus, dist, budget, rng, filter)

    if budget.is_iterations:
        budgets = [Budget(iterations=i) for i in split_iterations(budget.iterations, workers)]
    else:
        budgets = [budget] * workers
    jobs = [
        (corpus, dist, b, rng.seed, rng.key + (i,), filter) for i, b in enumerate(budgets)
    ]
    total: AlignmentCounts = Counter()
    with ProcessPoolExecutor(max_workers=workers) as pool:
        try:
            for delta in pool.map(_worker, jobs):
                total.update(delta)
        except KeyboardInterrupt:
            log.warning("interrupted; keeping alignments from finished workers")
    return total

