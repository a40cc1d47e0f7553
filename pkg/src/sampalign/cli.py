"""Command-line entry point: ``sampalign <subcommand> ...``.

Exit status: 0 success, 1 usage error, 2 input-format error, 3 I/O error.
Data goes to the output file or stdout; diagnostics go to stderr.
"""

import argparse
import logging
import re
import sys

from . import __version__
from .aligner import Budget, PhraseLengthFilter, run_anytime
from .corpus import CorpusError, read_corpus, tokenize, unigramize
from .phrase_table import (
    PhraseTable,
    PhraseTableFormatError,
    estimate_features,
    read_table,
    write_moses,
)
from .sampler import RandomSource, size_distribution
from .scheduler import EQUAL, STD_NORMAL, allot_time, run_anymalign_1N
from .table_ops import (
    backoff_filter,
    coverage_report,
    distribution_matrix,
    format_delimited,
    format_text,
    merge_union,
    overlap_report,
)

EXIT_OK, EXIT_USAGE, EXIT_FORMAT, EXIT_IO = 0, 1, 2, 3
DEFAULT_SEED = 20130101

_DURATION = re.compile(r"(\d+(?:\.\d+)?)([hms]?)")
_UNIT = {"h": 3600, "m": 60, "s": 1, "": 1}


class UsageError(Exception):
    pass


def parse_duration(text):
    """'25200', '7h', '1h30m', '90s', '2.5m' -> seconds (float)."""
    text = text.strip().lower()
    pos, total = 0, 0.0
    while pos < len(text):
        match = _DURATION.match(text, pos)
        if not match or match.end() == pos:
            raise argparse.ArgumentTypeError("invalid duration %r" % text)
        total += float(match.group(1)) * _UNIT[match.group(2)]
        pos = match.end()
        if not match.group(2) and pos < len(text):
            raise argparse.ArgumentTypeError("invalid duration %r" % text)
    if not text or total <= 0:
        raise argparse.ArgumentTypeError("duration must be positive: %r" % text)
    return total


def positive_int(text):
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1, got %s" % text)
    return value


def nonnegative_int(text):
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be >= 0, got %s" % text)
    return value


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError("%s: %s" % (self.prog, message))


def _add_output(p):
    p.add_argument("-o", "--output", help="output file (default: stdout)")


def _add_report(p):
    _add_output(p)
    p.add_argument("--format", choices=("text", "tsv"), default="text",
                   help="aligned text columns or tab-separated values")
    p.add_argument("--plot", metavar="PNG", help="also render a figure to this file")


def _add_alignment(p):
    p.add_argument("inputs", nargs="+", metavar="CORPUS",
                   help="source and target files, or one tab-separated file")
    budget = p.add_mutually_exclusive_group(required=True)
    budget.add_argument("--iterations", type=nonnegative_int,
                        help="number of subcorpora to process (reproducible)")
    budget.add_argument("--seconds", type=parse_duration,
                        help="wall-clock budget, e.g. 600, 45m, 7h")
    seed = p.add_mutually_exclusive_group()
    seed.add_argument("--seed", type=int, default=DEFAULT_SEED,
                      help="master seed (default %(default)s)")
    seed.add_argument("--random-seed", action="store_true",
                      help="seed from system entropy; the seed is logged")
    p.add_argument("--threads", type=positive_int, default=1,
                   help="worker processes (default 1, a single process)")
    _add_output(p)


def build_parser():
    parser = _Parser(prog="sampalign", description="Sampling-based phrase alignment toolkit.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("align", help="align a corpus into a phrase table")
    _add_alignment(p)
    p.add_argument("--max-source", type=positive_int, help="max source phrase length")
    p.add_argument("--max-target", type=positive_int, help="max target phrase length")

    p = sub.add_parser("align1n", help="Anymalign1-N over all unigramized n-m corpora")
    _add_alignment(p)
    p.add_argument("--n", dest="order", type=positive_int, required=True, help="maximum n-gram order N")
    p.add_argument("--mode", choices=("equal", "normal"), default="normal",
                   help="budget split among subtables (default normal)")

    p = sub.add_parser("unigramize", help="write the unigramized n-m corpus")
    p.add_argument("inputs", nargs="+", metavar="CORPUS")
    p.add_argument("--n", dest="n", type=positive_int, required=True, help="source order")
    p.add_argument("--m", dest="m", type=positive_int, required=True, help="target order")
    p.add_argument("--source-out", help="write source side here (with --target-out)")
    p.add_argument("--target-out", help="write target side here (with --source-out)")
    _add_output(p)

    p = sub.add_parser("schedule", help="print the time allotted to each subtable")
    p.add_argument("--n", dest="order", type=positive_int, required=True)
    p.add_argument("--seconds", type=parse_duration, required=True)
    p.add_argument("--mode", choices=("equal", "normal"), default="normal")
    _add_report(p)

    p = sub.add_parser("merge", help="union of two phrase tables")
    p.add_argument("table_a")
    p.add_argument("table_b")
    p.add_argument("--prefer", choices=("a", "b"), default="a",
                   help="whose features to keep for shared pairs")
    _add_output(p)

    p = sub.add_parser("backoff", help="keep entries with short source phrases")
    p.add_argument("table")
    p.add_argument("--max-n", type=positive_int, required=True)
    _add_output(p)

    p = sub.add_parser("stats-dist", help="phrase pairs by (source, target) length")
    p.add_argument("table")
    p.add_argument("--max-display", type=positive_int, default=7)
    _add_report(p)

    p = sub.add_parser("stats-coverage", help="test-text n-grams found in a table")
    p.add_argument("table")
    p.add_argument("test_text", help="one tokenized sentence per line")
    p.add_argument("--max-n", type=positive_int, default=7)
    _add_report(p)

    p = sub.add_parser("stats-overlap", help="shared and distinct phrase pairs")
    p.add_argument("table_a")
    p.add_argument("table_b")
    _add_report(p)
    return parser


def _emit(text, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(text)
    else:
        sys.stdout.write(text)


def _emit_table(table, path):
    if path:
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            write_moses(table, f)
    else:
        write_moses(table, sys.stdout)


def _emit_report(rows, args):
    text = format_delimited(rows) if args.format == "tsv" else format_text(rows)
    _emit(text, args.output)


def _load_corpus(inputs):
    if len(inputs) > 2:
        raise UsageError("expected one tab-separated file or a source and a target file")
    return read_corpus(inputs[0], inputs[1] if len(inputs) == 2 else None)


def _rng(args):
    if args.random_seed:
        rng = RandomSource.from_entropy()
        print("using seed %d" % rng.seed, file=sys.stderr)
        return rng
    return RandomSource(args.seed)


def _budget(args):
    if args.iterations is not None:
        return Budget(iterations=args.iterations)
    return Budget(seconds=args.seconds)


def _mode(name):
    return STD_NORMAL if name == "normal" else EQUAL


def cmd_align(args):
    corpus = _load_corpus(args.inputs)
    filter = PhraseLengthFilter(args.max_source, args.max_target)
    counts = run_anytime(corpus, size_distribution(corpus.line_count), _budget(args),
                         _rng(args), filter, args.threads)
    _emit_table(estimate_features(counts) if counts else PhraseTable(), args.output)


def cmd_align1n(args):
    corpus = _load_corpus(args.inputs)
    table = run_anymalign_1N(corpus, args.order, _budget(args), _mode(args.mode),
                             _rng(args), args.threads)
    _emit_table(table, args.output)


def cmd_unigramize(args):
    corpus = _load_corpus(args.inputs)
    uni = unigramize(corpus, args.n, args.m)
    if bool(args.source_out) != bool(args.target_out):
        raise UsageError("--source-out and --target-out go together")
    if args.source_out:
        _emit("".join(" ".join(s) + "\n" for s, _ in uni.pairs), args.source_out)
        _emit("".join(" ".join(t) + "\n" for _, t in uni.pairs), args.target_out)
    else:
        _emit("".join("%s\t%s\n" % (" ".join(s), " ".join(t)) for s, t in uni.pairs),
              args.output)


def cmd_schedule(args):
    if not float(args.seconds).is_integer():
        raise UsageError("schedule total must be a whole number of seconds")
    schedule = allot_time(args.order, int(args.seconds), _mode(args.mode))
    _emit_report(schedule.rows(), args)
    if args.plot:
        from .plotting import plot_schedule
        plot_schedule(schedule, args.plot)


def cmd_merge(args):
    merged = merge_union(read_table(args.table_a), read_table(args.table_b), args.prefer)
    _emit_table(merged, args.output)


def cmd_backoff(args):
    _emit_table(backoff_filter(read_table(args.table), args.max_n), args.output)


def cmd_stats_dist(args):
    matrix = distribution_matrix(read_table(args.table), args.max_display)
    _emit_report(matrix.rows(), args)
    if args.plot:
        from .plotting import plot_distribution
        plot_distribution(matrix, args.plot)


def cmd_stats_coverage(args):
    table = read_table(args.table)
    with open(args.test_text, encoding="utf-8") as f:
        sentences = [tokenize(line) for line in f]
    report = coverage_report(table, sentences, args.max_n)
    _emit_report(report.rows(), args)
    if args.plot:
        from .plotting import plot_coverage
        plot_coverage(report, args.plot)


def cmd_stats_overlap(args):
    report = overlap_report(read_table(args.table_a), read_table(args.table_b))
    _emit_report(report.rows(args.table_a, args.table_b), args)


COMMANDS = {
    "align": cmd_align,
    "align1n": cmd_align1n,
    "unigramize": cmd_unigramize,
    "schedule": cmd_schedule,
    "merge": cmd_merge,
    "backoff": cmd_backoff,
    "stats-dist": cmd_stats_dist,
    "stats-coverage": cmd_stats_coverage,
    "stats-overlap": cmd_stats_overlap,
}


def main(argv=None):
    try:
        args = build_parser().parse_args(argv)
    except UsageError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    try:
        COMMANDS[args.command](args)
    except UsageError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_USAGE
    except (CorpusError, PhraseTableFormatError) as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_FORMAT
    except UnicodeDecodeError as e:
        print("error: input is not valid UTF-8: %s" % e, file=sys.stderr)
        return EXIT_FORMAT
    except OSError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_IO
    except ValueError as e:
        print("error: %s" % e, file=sys.stderr)
        return EXIT_USAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
