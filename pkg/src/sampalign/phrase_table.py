"""Five-feature phrase tables and the Moses plain-text format.

Each line of a table file reads::

    source words ||| target words ||| p(s|t) lex(s|t) p(t|s) lex(t|s) 2.71828

Lexical weights are computed with every target word of a phrase pair
linked to every source word, since sampling-based alignment yields no
word-level links inside a phrase.
"""

from __future__ import annotations

import io
import math
from collections import Counter, defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Iterator, TextIO, Union

from .corpus import Tokens

PHRASE_PENALTY = math.e
SEPARATOR = " ||| "
NUM_FEATURES = 5


class PhraseTableFormatError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__("line %d: %s" % (lineno, message))
        self.lineno = lineno


@dataclass(frozen=True)
class PhraseTableEntry:
    source: Tokens
    target: Tokens
    p_src_given_tgt: float
    lex_src_given_tgt: float
    p_tgt_given_src: float
    lex_tgt_given_src: float
    penalty: float = PHRASE_PENALTY
    # verbatim trailing feature strings and extra ||| fields from parsed files
    extra_features: tuple[str, ...] = ()
    extra_fields: tuple[str, ...] = ()

    @property
    def key(self) -> tuple[Tokens, Tokens]:
        return (self.source, self.target)

    @property
    def features(self) -> tuple[float, float, float, float, float]:
        return (
            self.p_src_given_tgt,
            self.lex_src_given_tgt,
            self.p_tgt_given_src,
            self.lex_tgt_given_src,
            self.penalty,
        )


class PhraseTable:
    """Phrase pair -> entry mapping. Treat as immutable once built."""

    def __init__(self, entries: Iterable[PhraseTableEntry] = ()):
        self.entries: dict[tuple[Tokens, Tokens], PhraseTableEntry] = {}
        for entry in entries:
            self.entries[entry.key] = entry

    def __len__(self):
        return len(self.entries)

    def __iter__(self) -> Iterator[PhraseTableEntry]:
        return iter(self.entries.values())

    def __contains__(self, key):
        return key in self.entries

    def __getitem__(self, key) -> PhraseTableEntry:
        return self.entries[key]

    def keys(self):
        return self.entries.keys()

    def source_phrases(self) -> set[Tokens]:
        return {source for source, _ in self.entries}

    def sorted_entries(self) -> list[PhraseTableEntry]:
        return [self.entries[k] for k in sorted(self.entries)]

    def __eq__(self, other):
        return isinstance(other, PhraseTable) and self.entries == other.entries

    def __repr__(self):
        return "PhraseTable(%d entries)" % len(self)


@dataclass
class Lexicon:
    """Word translation probabilities in both directions.

    ``tgt_given_src[s][t]`` is w(t|s); ``src_given_tgt[t][s]`` is w(s|t).
    """

    tgt_given_src: dict[str, dict[str, float]] = field(default_factory=dict)
    src_given_tgt: dict[str, dict[str, float]] = field(default_factory=dict)

    def w_tgt_given_src(self, s: str, t: str) -> float:
        return self.tgt_given_src.get(s, {}).get(t, 0.0)

    def w_src_given_tgt(self, t: str, s: str) -> float:
        return self.src_given_tgt.get(t, {}).get(s, 0.0)


def _normalize_rows(mass):
    out = {}
    for row, cells in mass.items():
        total = math.fsum(cells.values())
        out[row] = {col: v / total for col, v in cells.items()}
    return out


def build_lexicon(counts: Counter) -> Lexicon:
    """Word co-occurrence mass over aligned phrase pairs, row-normalized each way.

    Every (source word occurrence, target word occurrence) combination of a
    pair receives that pair's count.
    """
    if not counts:
        raise ValueError("cannot build a lexicon from empty alignment counts")
    forward: dict = defaultdict(lambda: defaultdict(int))
    backward: dict = defaultdict(lambda: defaultdict(int))
    for (source, target), c in counts.items():
        for s in source:
            for t in target:
                forward[s][t] += c
                backward[t][s] += c
    return Lexicon(_normalize_rows(forward), _normalize_rows(backward))


def lexical_weight(given: Tokens, produced: Tokens, table: dict) -> float:
    """prod over produced words of the mean w(word | g) over g in ``given``."""
    weight = 1.0
    for word in produced:
        weight *= math.fsum(table.get(g, {}).get(word, 0.0) for g in given) / len(given)
    return weight


def estimate_features(counts: Counter, lexicon: Lexicon | None = None) -> PhraseTable:
    """Relative-frequency translation probabilities plus lexical weights."""
    if not counts:
        raise ValueError("cannot estimate features from empty alignment counts")
    if lexicon is None:
        lexicon = build_lexicon(counts)
    source_totals: Counter = Counter()
    target_totals: Counter = Counter()
    for (source, target), c in counts.items():
        source_totals[source] += c
        target_totals[target] += c

    entries = []
    for (source, target), c in counts.items():
        entries.append(
            PhraseTableEntry(
                source,
                target,
                p_src_given_tgt=c / target_totals[target],
                lex_src_given_tgt=lexical_weight(target, source, lexicon.src_given_tgt),
                p_tgt_given_src=c / source_totals[source],
                lex_tgt_given_src=lexical_weight(source, target, lexicon.tgt_given_src),
            )
        )
    return PhraseTable(entries)


def format_feature(value: float) -> str:
    return "%#.6g" % value


def format_entry(entry: PhraseTableEntry) -> str:
    scores = [format_feature(v) for v in entry.features]
    scores.extend(entry.extra_features)
    fields = [" ".join(entry.source), " ".join(entry.target), " ".join(scores)]
    fields.extend(entry.extra_fields)
    return SEPARATOR.join(fields)


def write_moses(table: PhraseTable, sink: TextIO) -> None:
    for entry in table.sorted_entries():
        sink.write(format_entry(entry))
        sink.write("\n")


def to_moses_string(table: PhraseTable) -> str:
    buf = io.StringIO()
    write_moses(table, buf)
    return buf.getvalue()


def parse_line(line: str, lineno: int) -> PhraseTableEntry:
    fields = [f.strip() for f in line.split("|||")]
    if len(fields) < 3:
        raise PhraseTableFormatError(lineno, "expected at least 3 '|||'-separated fields")
    source, target = tuple(fields[0].split()), tuple(fields[1].split())
    if not source or not target:
        raise PhraseTableFormatError(lineno, "empty source or target phrase")
    raw = fields[2].split()
    if len(raw) < NUM_FEATURES:
        raise PhraseTableFormatError(
            lineno, "expected at least %d features, found %d" % (NUM_FEATURES, len(raw))
        )
    try:
        values = [float(v) for v in raw[:NUM_FEATURES]]
    except ValueError:
        raise PhraseTableFormatError(lineno, "non-numeric feature in %r" % fields[2]) from None
    return PhraseTableEntry(
        source,
        target,
        *values,
        extra_features=tuple(raw[NUM_FEATURES:]),
        extra_fields=tuple(fields[3:]),
    )


def parse_moses(source: Union[str, TextIO]) -> PhraseTable:
    if isinstance(source, str):
        source = io.StringIO(source)
    table = PhraseTable()
    for lineno, line in enumerate(source, 1):
        if not line.strip():
            continue
        entry = parse_line(line, lineno)
        if entry.key in table.entries:
            raise PhraseTableFormatError(
                lineno, "duplicate phrase pair %r ||| %r"
                % (" ".join(entry.source), " ".join(entry.target))
            )
        table.entries[entry.key] = entry
    return table


def read_table(path: str) -> PhraseTable:
    with open(path, encoding="utf-8") as f:
        return parse_moses(f)


def write_table(table: PhraseTable, path: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        write_moses(table, f)
