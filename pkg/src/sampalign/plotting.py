"""Figures for the report subcommands, written straight to image files."""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402


def _heatmap(ax, values, row_labels, col_labels, fmt="%d"):
    im = ax.imshow(values, cmap="Blues", aspect="auto")
    ax.set_xticks(range(len(col_labels)))
    ax.set_xticklabels(col_labels, rotation=45, ha="right")
    ax.set_yticks(range(len(row_labels)))
    ax.set_yticklabels(row_labels)
    peak = values.max() if values.size else 0
    for i in range(values.shape[0]):
        for j in range(values.shape[1]):
            v = values[i, j]
            ax.text(j, i, fmt % v, ha="center", va="center", fontsize=8,
                    color="white" if peak and v > 0.6 * peak else "black")
    return im


def plot_distribution(matrix, path, title="Phrase pairs by length"):
    """Heatmap of entry counts by (source length, target length)."""
    k = max(1, min(matrix.max_display, max(matrix.max_source_length, matrix.max_target_length, 1)))
    values = np.array([[matrix.get(s, t) for t in range(1, k + 1)] for s in range(1, k + 1)])
    labels = ["%d" % i for i in range(1, k + 1)]
    fig, ax = plt.subplots(figsize=(1.0 + 0.8 * k, 0.8 + 0.7 * k))
    im = _heatmap(ax, values, labels, labels)
    ax.set_xlabel("target length (words)")
    ax.set_ylabel("source length (words)")
    ax.set_title(title)
    fig.colorbar(im, ax=ax)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_schedule(schedule, path):
    values = np.array(schedule.seconds)
    labels = ["%d-grams" % i for i in range(1, schedule.order + 1)]
    size = 1.5 + 0.9 * schedule.order
    fig, ax = plt.subplots(figsize=(size, size * 0.8))
    im = _heatmap(ax, values, labels, labels)
    ax.set_xlabel("target")
    ax.set_ylabel("source")
    ax.set_title("seconds per subtable (%s, total %d s)" % (schedule.mode, schedule.total_seconds))
    fig.colorbar(im, ax=ax)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_coverage(report, path):
    ns = [r.n for r in report.rows_by_n]
    found = [r.found for r in report.rows_by_n]
    missing = [r.not_found for r in report.rows_by_n]
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.bar(ns, found, label="in table")
    ax.bar(ns, missing, bottom=found, label="not in table", color="lightgray")
    ax.set_xticks(ns)
    ax.set_xlabel("n")
    ax.set_ylabel("unique n-grams in test text")
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
