"""Slow, naive reference implementations used only by the tests.

None of these import the code under test, except where a test composes an
oracle with the real sampler to replay the same random draws.
"""

from collections import Counter


def brute_force_alignments(pairs, max_source=None, max_target=None):
    """Group words by their dense per-line count vector and emit whole-group phrases.

    ``pairs`` is the subcorpus itself: a list of (source tokens, target tokens).
    """
    def profile(word, side):
        return tuple(list(p[side]).count(word) for p in pairs)

    vocab = [(w, side) for side in (0, 1) for w in sorted({t for p in pairs for t in p[side]})]
    groups = []
    for word, side in vocab:
        for g in groups:
            rep_word, rep_side = g[0]
            if profile(rep_word, rep_side) == profile(word, side):
                g.append((word, side))
                break
        else:
            groups.append([(word, side)])

    counts = Counter()
    for g in groups:
        src_words = {w for w, s in g if s == 0}
        tgt_words = {w for w, s in g if s == 1}
        if not src_words or not tgt_words:
            continue
        prof = profile(*g[0])
        for line_no, c in enumerate(prof):
            if c == 0:
                continue
            src, tgt = pairs[line_no]
            phrases = []
            for tokens, members in ((src, src_words), (tgt, tgt_words)):
                pos = [i for i in range(len(tokens)) if tokens[i] in members]
                if set(pos) != set(range(min(pos), max(pos) + 1)):
                    phrases = None
                    break
                phrases.append(tuple(tokens[i] for i in pos))
            if phrases is None:
                continue
            if max_source is not None and len(phrases[0]) > max_source:
                continue
            if max_target is not None and len(phrases[1]) > max_target:
                continue
            counts[tuple(phrases)] += 1
    return counts


def naive_unigramize(line, n):
    """Plain-string n-gram joining, with no escaping; test inputs carry no underscores."""
    words = line.split()
    return " ".join("_".join(words[i:i + n]) for i in range(len(words) - n + 1))


def hand_lexicon(counts):
    """w(t|s) and w(s|t) as dicts keyed by (given, produced) from summed co-occurrence mass."""
    mass = Counter()
    for (src, tgt), c in counts.items():
        for s in src:
            for t in tgt:
                mass[s, t] += c
    src_tot, tgt_tot = Counter(), Counter()
    for (s, t), c in mass.items():
        src_tot[s] += c
        tgt_tot[t] += c
    t_given_s = {(s, t): c / src_tot[s] for (s, t), c in mass.items()}
    s_given_t = {(t, s): c / tgt_tot[t] for (s, t), c in mass.items()}
    return t_given_s, s_given_t
