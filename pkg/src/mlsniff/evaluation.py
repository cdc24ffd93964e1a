"""Scoring detector output against annotated ground truth."""

from __future__ import annotations

import enum
from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

from mlsniff.model import Finding, Framework
from mlsniff.registry import REGISTRY
from mlsniff.reporting import read_rows, write_rows

TRUTH_HEADER = ("file", "line", "detector_id", "label")
METRICS_HEADER = ("scope", "count", "tp", "fp", "fn", "tn",
                  "agreement_rate", "precision", "recall", "f1", "f2")


class UnknownDetector(ValueError):
    pass


class EmptyEvaluation(ValueError):
    pass


class Label(enum.Enum):
    PRESENT = "present"
    ABSENT = "absent"


@dataclass(frozen=True)
class GroundTruthEntry:
    file: str
    line: int
    detector_id: str
    label: Label

    @property
    def framework(self) -> Framework:
        return Framework.from_prefix(self.detector_id)


@dataclass(frozen=True)
class ConfusionCounts:
    tp: int = 0
    fp: int = 0
    fn: int = 0
    tn: int = 0

    def __post_init__(self) -> None:
        for name in ("tp", "fp", "fn", "tn"):
            value = getattr(self, name)
            if not isinstance(value, int) or value < 0:
                raise ValueError(f"{name} must be a non-negative integer, got {value!r}")

    def __add__(self, other: "ConfusionCounts") -> "ConfusionCounts":
        return ConfusionCounts(self.tp + other.tp, self.fp + other.fp,
                               self.fn + other.fn, self.tn + other.tn)

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class EvaluationMetrics:
    agreement_rate: float
    precision: float
    recall: float
    f1: float
    f2: float


def f_beta(precision: float, recall: float, beta: float) -> float:
    b2 = beta * beta
    denominator = b2 * precision + recall
    if denominator <= 0:
        return 0.0
    return (1 + b2) * precision * recall / denominator


def compute_metrics(c: ConfusionCounts) -> EvaluationMetrics:
    if c.total == 0:
        raise EmptyEvaluation("no annotated locations to evaluate")
    precision = c.tp / (c.tp + c.fp) if c.tp + c.fp else 0.0
    recall = c.tp / (c.tp + c.fn) if c.tp + c.fn else 0.0
    return EvaluationMetrics(
        agreement_rate=(c.tp + c.tn) / c.total,
        precision=precision,
        recall=recall,
        f1=f_beta(precision, recall, 1.0),
        f2=f_beta(precision, recall, 2.0),
    )


def match_findings(findings: Iterable[Finding], truth: Iterable[GroundTruthEntry]) -> ConfusionCounts:
    """Count agreement at annotated (file, line, detector_id) locations only."""
    truth = list(truth)
    for entry in truth:
        if entry.detector_id not in REGISTRY:
            raise UnknownDetector(f"ground truth references unknown detector {entry.detector_id!r}")
    flagged = {(f.file, f.line, f.detector_id) for f in findings}
    tp = fp = fn = tn = 0
    for entry in truth:
        hit = (entry.file, entry.line, entry.detector_id) in flagged
        if entry.label is Label.PRESENT:
            tp, fn = (tp + 1, fn) if hit else (tp, fn + 1)
        else:
            fp, tn = (fp + 1, tn) if hit else (fp, tn + 1)
    return ConfusionCounts(tp, fp, fn, tn)


def per_framework(
    findings: Sequence[Finding], truth: Sequence[GroundTruthEntry]
) -> dict[Framework, ConfusionCounts]:
    grouped: dict[Framework, list[GroundTruthEntry]] = defaultdict(list)
    for entry in truth:
        grouped[entry.framework].append(entry)
    return {fw: match_findings(findings, entries) for fw, entries in grouped.items()}


def parse_truth_csv(text: str) -> list[GroundTruthEntry]:
    entries = []
    for row in read_rows(text, TRUTH_HEADER):
        try:
            label = Label(row["label"].strip().lower())
            line = int(row["line"])
        except ValueError as exc:
            raise ValueError(f"bad ground-truth row {row}: {exc}") from None
        if line < 1:
            raise ValueError(f"bad ground-truth row {row}: line must be >= 1")
        entries.append(GroundTruthEntry(row["file"], line, row["detector_id"], label))
    return entries


def render_truth_csv(entries: Iterable[GroundTruthEntry]) -> str:
    rows = sorted((e.file, e.line, e.detector_id, e.label.value) for e in entries)
    return write_rows([TRUTH_HEADER, *rows])


def _metric_row(scope: str, c: ConfusionCounts) -> tuple:
    m = compute_metrics(c)
    return (scope, c.total, c.tp, c.fp, c.fn, c.tn,
            *(f"{v:.4f}" for v in (m.agreement_rate, m.precision, m.recall, m.f1, m.f2)))


def render_metrics_csv(findings: Sequence[Finding], truth: Sequence[GroundTruthEntry]) -> str:
    """Overall metrics followed by one row per framework present in the truth set."""
    rows = [METRICS_HEADER, _metric_row("overall", match_findings(findings, truth))]
    breakdown = per_framework(findings, truth)
    for framework in Framework:
        if framework in breakdown:
            rows.append(_metric_row(framework.value, breakdown[framework]))
    return write_rows(rows)
