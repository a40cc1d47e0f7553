import random
import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from sampalign.corpus import Corpus  # noqa: E402

ACCEPTANCE_RESULTS = []


@pytest.fixture
def criterion():
    """Record one acceptance line; the test still asserts on its own."""
    def record(number, description, ok, detail=""):
        ACCEPTANCE_RESULTS.append((number, description, bool(ok), detail))
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number, description, ok, detail in sorted(ACCEPTANCE_RESULTS):
        line = "[%s] %2d. %s" % ("PASS" if ok else "FAIL", number, description)
        if detail:
            line += " (%s)" % detail
        terminalreporter.write_line(line)


def random_corpus(rng, lines, max_tokens, vocab=4, min_tokens=1):
    """Small corpus over a tiny vocabulary so that signature collisions are common."""
    src_vocab = ["s%d" % i for i in range(vocab)]
    tgt_vocab = ["t%d" % i for i in range(vocab)]
    pairs = []
    for _ in range(lines):
        src = tuple(rng.choice(src_vocab) for _ in range(rng.randint(min_tokens, max_tokens)))
        tgt = tuple(rng.choice(tgt_vocab) for _ in range(rng.randint(min_tokens, max_tokens)))
        pairs.append((src, tgt))
    return Corpus(tuple(pairs))


@pytest.fixture
def pyrng():
    return random.Random(1234)


@pytest.fixture
def micro_corpus():
    return Corpus(((("a", "b"), ("x", "y")), (("a", "c"), ("x", "z"))))
