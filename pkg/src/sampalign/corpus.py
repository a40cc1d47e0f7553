"""Parallel corpus loading and the n-gram-to-unigram rewriting.

A unigramized n-m corpus rewrites every source n-gram and every target
m-gram as a single underscore-joined token, so that an aligner which only
looks at single tokens ends up aligning phrases::

    >>> c = load_parallel_corpus("le debat est clos .\\n", "the debate is closed .\\n")
    >>> " ".join(unigramize(c, 2, 3).pairs[0][0])
    'le_debat debat_est est_clos clos_.'
    >>> de_unigramize("the_debate_is")
    ('the', 'debate', 'is')
"""

from __future__ import annotations

import io
from dataclasses import dataclass
from typing import Iterable, TextIO, Union

JOINER = "_"
ESCAPE = "\\"

Tokens = tuple[str, ...]
SentencePair = tuple[Tokens, Tokens]
TextSource = Union[str, TextIO, Iterable[str]]


class CorpusError(ValueError):
    """Raised for malformed parallel corpus input."""


@dataclass(frozen=True)
class Corpus:
    """Sentence-aligned corpus: ``pairs[i]`` is (source tokens, target tokens)."""

    pairs: tuple[SentencePair, ...]

    @property
    def line_count(self) -> int:
        return len(self.pairs)

    def __len__(self) -> int:
        return len(self.pairs)

    def side(self, index: int) -> list[Tokens]:
        """Token lists of one side (0 = source, 1 = target)."""
        return [pair[index] for pair in self.pairs]


@dataclass(frozen=True)
class UnigramizedCorpus(Corpus):
    """Corpus whose source tokens are joined n-grams and target tokens m-grams.

    Line indices are those of ``base``; a line shorter than the order becomes
    an empty side rather than being dropped.
    """

    base: Corpus | None = None
    n: int = 1
    m: int = 1


def tokenize(line: str) -> Tokens:
    return tuple(line.split())


def _lines(source: TextSource) -> list[str]:
    if isinstance(source, str):
        source = io.StringIO(source)
    return [line.rstrip("\r\n") for line in source]


def corpus_from_lines(source_lines: list[str], target_lines: list[str]) -> Corpus:
    if len(source_lines) != len(target_lines):
        raise CorpusError(
            "line-count mismatch: source has %d lines, target has %d"
            % (len(source_lines), len(target_lines))
        )
    pairs = []
    for lineno, (src, tgt) in enumerate(zip(source_lines, target_lines), 1):
        src_tokens, tgt_tokens = tokenize(src), tokenize(tgt)
        if not src_tokens:
            raise CorpusError("empty source line at line %d" % lineno)
        if not tgt_tokens:
            raise CorpusError("empty target line at line %d" % lineno)
        pairs.append((src_tokens, tgt_tokens))
    return Corpus(tuple(pairs))


def load_parallel_corpus(source_text: TextSource, target_text: TextSource) -> Corpus:
    """Read two line-aligned streams (or strings) into a Corpus.

    Tokens are runs of non-whitespace characters. Both sides must have the
    same number of lines and no line may be blank.
    """
    return corpus_from_lines(_lines(source_text), _lines(target_text))


def load_tab_separated(text: TextSource) -> Corpus:
    """Read the single-file form: ``source<TAB>target`` on every line."""
    sources, targets = [], []
    for lineno, line in enumerate(_lines(text), 1):
        fields = line.split("\t")
        if len(fields) != 2:
            raise CorpusError(
                "line %d: expected exactly one tab separator, found %d"
                % (lineno, len(fields) - 1)
            )
        sources.append(fields[0])
        targets.append(fields[1])
    return corpus_from_lines(sources, targets)


def read_corpus(source_path: str, target_path: str | None = None) -> Corpus:
    """Load from two files, or from one tab-separated file when target_path is None."""
    with open(source_path, encoding="utf-8") as src:
        if target_path is None:
            return load_tab_separated(src)
        with open(target_path, encoding="utf-8") as tgt:
            return load_parallel_corpus(src, tgt)


def escape_token(token: str) -> str:
    return token.replace(ESCAPE, ESCAPE + ESCAPE).replace(JOINER, ESCAPE + JOINER)


def join_ngram(words: Iterable[str]) -> str:
    return JOINER.join(escape_token(w) for w in words)


def ngrams(tokens: Tokens, n: int) -> list[Tokens]:
    return [tokens[i:i + n] for i in range(len(tokens) - n + 1)]


def unigramize_line(tokens: Tokens, n: int) -> Tokens:
    return tuple(join_ngram(gram) for gram in ngrams(tokens, n))


def unigramize(corpus: Corpus, n: int, m: int) -> UnigramizedCorpus:
    """Build the unigramized n-m corpus (source n-grams, target m-grams)."""
    if n < 1 or m < 1:
        raise ValueError("n-gram orders must be >= 1, got n=%r m=%r" % (n, m))
    pairs = tuple(
        (unigramize_line(src, n), unigramize_line(tgt, m)) for src, tgt in corpus.pairs
    )
    return UnigramizedCorpus(pairs, base=corpus, n=n, m=m)


def de_unigramize(phrase_token: str) -> Tokens:
    """Split a joined token back into the words it was built from.

    Raises CorpusError on a dangling or unknown escape, or when splitting
    would produce an empty word.
    """
    words = []
    current = []
    chars = iter(phrase_token)
    for ch in chars:
        if ch == ESCAPE:
            nxt = next(chars, None)
            if nxt not in (ESCAPE, JOINER):
                raise CorpusError("malformed escape sequence in %r" % phrase_token)
            current.append(nxt)
        elif ch == JOINER:
            words.append("".join(current))
            current = []
        else:
            current.append(ch)
    words.append("".join(current))
    if any(not w for w in words):
        raise CorpusError("empty word in joined token %r" % phrase_token)
    return tuple(words)


def de_unigramize_phrase(tokens: Iterable[str]) -> Tokens:
    """De-unigramize each token of a phrase and concatenate the word lists."""
    words: list[str] = []
    for token in tokens:
        words.extend(de_unigramize(token))
    return tuple(words)
