"""Bar charts for corpus prevalence tables.

Figures are written next to the CSV report; rendering uses the Agg backend
so it works headless.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from mlsniff.model import Framework  # noqa: E402
from mlsniff.reporting import CorpusReport  # noqa: E402

# fixed metadata keeps PNG bytes stable between runs
_PNG_METADATA = {"Software": None}


def _barh(labels: Sequence[str], counts: Sequence[int], title: str, xlabel: str, path: Path) -> Path:
    height = max(2.5, 0.45 * len(labels) + 1.2)
    fig, ax = plt.subplots(figsize=(7, height))
    positions = range(len(labels))
    ax.barh(positions, counts, color="#4c72b0")
    ax.set_yticks(list(positions))
    ax.set_yticklabels(labels)
    ax.invert_yaxis()
    ax.set_xlabel(xlabel)
    ax.set_title(title)
    for pos, count in zip(positions, counts):
        ax.annotate(str(count), (count, pos), xytext=(3, 0), textcoords="offset points",
                    va="center", fontsize=8)
    ax.spines["top"].set_visible(False)
    ax.spines["right"].set_visible(False)
    fig.tight_layout()
    fig.savefig(path, dpi=120, metadata=_PNG_METADATA)
    plt.close(fig)
    return path


def plot_framework_distribution(corpus: CorpusReport, path: str | Path) -> Path:
    table = corpus.merged.framework_table()
    return _barh([fw.value for fw, _ in table], [n for _, n in table],
                 "Distribution of findings across frameworks", "findings", Path(path))


def plot_top_smells(corpus: CorpusReport, path: str | Path) -> Path:
    top = corpus.merged.top_smells
    labels = [name for name, _ in top] or ["(none)"]
    counts = [n for _, n in top] or [0]
    return _barh(labels, counts, "Most common smells", "occurrences", Path(path))


def plot_project_totals(corpus: CorpusReport, path: str | Path) -> Path:
    """Stacked per-project bars, one segment per framework."""
    names = [name for name, _ in corpus.projects] or ["(none)"]
    fig, ax = plt.subplots(figsize=(7, max(2.5, 0.45 * len(names) + 1.5)))
    left = [0] * len(names)
    cmap = plt.get_cmap("tab10")
    for i, framework in enumerate(Framework):
        counts = [batch.totals[framework] for _, batch in corpus.projects] or [0]
        ax.barh(range(len(names)), counts, left=left, label=framework.value, color=cmap(i))
        left = [a + b for a, b in zip(left, counts)]
    ax.set_yticks(list(range(len(names))))
    ax.set_yticklabels(names)
    ax.invert_yaxis()
    ax.set_xlabel("findings")
    ax.set_title("Findings per project")
    ax.legend(fontsize=7, loc="lower right")
    fig.tight_layout()
    fig.savefig(Path(path), dpi=120, metadata=_PNG_METADATA)
    plt.close(fig)
    return Path(path)


def write_corpus_figures(corpus: CorpusReport, directory: str | Path) -> list[Path]:
    out = Path(directory)
    out.mkdir(parents=True, exist_ok=True)
    return [
        plot_framework_distribution(corpus, out / "framework_distribution.png"),
        plot_top_smells(corpus, out / "top_smells.png"),
        plot_project_totals(corpus, out / "project_totals.png"),
    ]
