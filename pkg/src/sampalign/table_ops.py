"""Set operations and reports over phrase tables.

Phrase pairs are compared on exact token sequences; features never enter
into identity.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable

from .corpus import Tokens, ngrams
from .phrase_table import PhraseTable


def merge_union(a: PhraseTable, b: PhraseTable, prefer: str = "a") -> PhraseTable:
    """Union of both tables; shared pairs keep the preferred table's features verbatim."""
    if prefer not in ("a", "b"):
        raise ValueError("prefer must be 'a' or 'b', got %r" % prefer)
    first, second = (b, a) if prefer == "a" else (a, b)
    merged = PhraseTable()
    merged.entries.update(first.entries)
    merged.entries.update(second.entries)
    return merged


def backoff_filter(table: PhraseTable, max_n: int) -> PhraseTable:
    """Keep entries whose source phrase has at most ``max_n`` words."""
    if max_n < 1:
        raise ValueError("max_n must be >= 1, got %r" % max_n)
    return PhraseTable(e for e in table if len(e.source) <= max_n)


@dataclass
class DistributionMatrix:
    """Entry counts by (source length, target length).

    Totals cover every entry; ``max_display`` only limits what ``rows()``
    spells out cell by cell, longer lengths being folded into a "..." row
    and column.
    """

    cells: Counter = field(default_factory=Counter)
    max_display: int = 7

    @property
    def row_totals(self) -> Counter:
        out = Counter()
        for (s, _), c in self.cells.items():
            out[s] += c
        return out

    @property
    def column_totals(self) -> Counter:
        out = Counter()
        for (_, t), c in self.cells.items():
            out[t] += c
        return out

    @property
    def grand_total(self) -> int:
        return sum(self.cells.values())

    @property
    def max_source_length(self) -> int:
        return max((s for s, _ in self.cells), default=0)

    @property
    def max_target_length(self) -> int:
        return max((t for _, t in self.cells), default=0)

    def get(self, source_len: int, target_len: int) -> int:
        return self.cells.get((source_len, target_len), 0)

    def rows(self) -> list[list[str]]:
        k = self.max_display
        overflow_rows = self.max_source_length > k
        overflow_cols = self.max_target_length > k

        def bucket(length):
            return length if length <= k else k + 1

        folded = Counter()
        for (s, t), c in self.cells.items():
            folded[bucket(s), bucket(t)] += c
        col_ids = list(range(1, k + 1)) + ([k + 1] if overflow_cols else [])
        row_ids = list(range(1, k + 1)) + ([k + 1] if overflow_rows else [])

        def label(i):
            return "%d-grams" % i if i <= k else "..."

        rows_t, cols_t = self.row_totals, self.column_totals
        out = [["source\\target"] + [label(j) for j in col_ids] + ["total"]]
        for i in row_ids:
            if i <= k:
                total = rows_t[i]
            else:
                total = sum(c for s, c in rows_t.items() if s > k)
            out.append([label(i)] + [str(folded[i, j]) for j in col_ids] + [str(total)])
        col_totals = [
            cols_t[j] if j <= k else sum(c for t, c in cols_t.items() if t > k)
            for j in col_ids
        ]
        out.append(["total"] + [str(c) for c in col_totals] + [str(self.grand_total)])
        return out


def distribution_matrix(table: PhraseTable, max_display: int = 7) -> DistributionMatrix:
    cells = Counter((len(e.source), len(e.target)) for e in table)
    return DistributionMatrix(cells, max_display)


@dataclass
class CoverageRow:
    n: int
    unique: int
    found: int

    @property
    def not_found(self) -> int:
        return self.unique - self.found


@dataclass
class CoverageReport:
    rows_by_n: list[CoverageRow]

    def row(self, n: int) -> CoverageRow:
        return self.rows_by_n[n - 1]

    def rows(self) -> list[list[str]]:
        out = [["n-grams", "corpus", "in TT", "not in TT"]]
        for r in self.rows_by_n:
            out.append(["%d-gram" % r.n, str(r.unique), str(r.found), str(r.not_found)])
        return out


def coverage_report(table: PhraseTable, test_text: Iterable[Tokens], max_n: int = 7) -> CoverageReport:
    """How many unique test-text n-grams occur as a source phrase of the table."""
    if max_n < 1:
        raise ValueError("max_n must be >= 1, got %r" % max_n)
    sentences = [tuple(s) for s in test_text]
    sources = table.source_phrases()
    rows = []
    for n in range(1, max_n + 1):
        unique = {g for s in sentences for g in ngrams(s, n)}
        rows.append(CoverageRow(n, len(unique), len(unique & sources)))
    return CoverageReport(rows)


@dataclass
class OverlapReport:
    overlap: int
    difference_a: int
    difference_b: int

    @property
    def total_a(self) -> int:
        return self.overlap + self.difference_a

    @property
    def total_b(self) -> int:
        return self.overlap + self.difference_b

    def rows(self, name_a: str = "A", name_b: str = "B") -> list[list[str]]:
        return [
            ["table", "overlap", "difference", "total"],
            [name_a, str(self.overlap), str(self.difference_a), str(self.total_a)],
            [name_b, str(self.overlap), str(self.difference_b), str(self.total_b)],
        ]


def overlap_report(a: PhraseTable, b: PhraseTable) -> OverlapReport:
    keys_a, keys_b = set(a.keys()), set(b.keys())
    shared = len(keys_a & keys_b)
    return OverlapReport(shared, len(keys_a) - shared, len(keys_b) - shared)


def format_text(rows: list[list[str]]) -> str:
    """Right-aligned plain-text columns (first column left-aligned)."""
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    lines = []
    for r in rows:
        cells = [r[0].ljust(widths[0])] + [c.rjust(w) for c, w in zip(r[1:], widths[1:])]
        lines.append("  ".join(cells).rstrip())
    return "\n".join(lines) + "\n"


def format_delimited(rows: list[list[str]], sep: str = "\t") -> str:
    return "".join(sep.join(r) + "\n" for r in rows)
