"""Sampling-based sub-sentential alignment and phrase-table tools."""

__version__ = "0.1.0"

from .aligner import (
    Budget,
    PhraseLengthFilter,
    compute_signatures,
    extract_alignments,
    run_anytime,
)
from .corpus import (
    Corpus,
    CorpusError,
    UnigramizedCorpus,
    de_unigramize,
    load_parallel_corpus,
    load_tab_separated,
    unigramize,
)
from .phrase_table import (
    Lexicon,
    PhraseTable,
    PhraseTableEntry,
    PhraseTableFormatError,
    build_lexicon,
    estimate_features,
    parse_moses,
    write_moses,
)
from .sampler import RandomSource, Subcorpus, draw_subcorpus, sample_size, size_distribution
from .scheduler import allot_time, run_anymalign_1N, time_weights
from .table_ops import (
    backoff_filter,
    coverage_report,
    distribution_matrix,
    merge_union,
    overlap_report,
)

__all__ = [
    "Budget",
    "PhraseLengthFilter",
    "compute_signatures",
    "extract_alignments",
    "run_anytime",
    "Corpus",
    "CorpusError",
    "UnigramizedCorpus",
    "de_unigramize",
    "load_parallel_corpus",
    "load_tab_separated",
    "unigramize",
    "Lexicon",
    "PhraseTable",
    "PhraseTableEntry",
    "PhraseTableFormatError",
    "build_lexicon",
    "estimate_features",
    "parse_moses",
    "write_moses",
    "RandomSource",
    "Subcorpus",
    "draw_subcorpus",
    "sample_size",
    "size_distribution",
    "allot_time",
    "run_anymalign_1N",
    "time_weights",
    "backoff_filter",
    "coverage_report",
    "distribution_matrix",
    "merge_union",
    "overlap_report",
]
