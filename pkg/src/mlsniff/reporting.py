"""Text and CSV rendering plus corpus-level aggregation.

Both formats are byte-deterministic: LF line endings, path-sorted sections,
findings ordered by (file, line, column, detector_id).
"""

from __future__ import annotations

import csv
import io
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from mlsniff.astcore import Span
from mlsniff.model import FileReport, Finding, Framework

CSV_HEADER = ("file", "line", "column", "framework", "detector_id",
              "smell_name", "message", "advice")
CORPUS_HEADER = ("table", "project", "name", "count")
TOP_N = 10

_NEEDS_QUOTES = frozenset(',"\r\n')


@dataclass(frozen=True)
class BatchReport:
    file_reports: tuple[FileReport, ...]
    totals: Mapping[Framework, int]
    top_smells: tuple[tuple[str, int], ...]

    @property
    def findings(self) -> list[Finding]:
        return [f for r in self.file_reports for f in r.findings]

    @property
    def finding_count(self) -> int:
        return sum(len(r.findings) for r in self.file_reports)

    def framework_table(self) -> list[tuple[Framework, int]]:
        """All frameworks, by count descending (ties in declaration order)."""
        order = list(Framework)
        return sorted(self.totals.items(), key=lambda kv: (-kv[1], order.index(kv[0])))


def rank_smells(counts: Mapping[str, int], limit: int | None = TOP_N) -> tuple[tuple[str, int], ...]:
    ranked = sorted(counts.items(), key=lambda kv: (-kv[1], kv[0]))
    return tuple(ranked[:limit] if limit is not None else ranked)


def aggregate(file_reports: Iterable[FileReport]) -> BatchReport:
    reports = tuple(sorted(file_reports, key=lambda r: r.file))
    totals = {fw: 0 for fw in Framework}
    smells: Counter[str] = Counter()
    for report in reports:
        for finding in report.findings:
            totals[finding.framework] += 1
            smells[finding.smell_name] += 1
    return BatchReport(reports, totals, rank_smells(smells))


def _sorted_findings(batch: BatchReport) -> list[Finding]:
    return sorted(batch.findings, key=Finding.sort_key)


def format_finding(f: Finding) -> str:
    return (f"{f.file}:{f.line}:{f.column} [{f.detector_id}] {f.smell_name}: "
            f"{f.message} | advice: {f.advice}")


def render_text(batch: BatchReport) -> str:
    lines: list[str] = []
    for report in batch.file_reports:
        lines.append(f"== {report.file} ==")
        if report.parse_error is not None:
            err = report.parse_error
            lines.append(f"{report.file}:{err.line}: parse error: {err.message}")
        elif not report.findings:
            lines.append("no findings")
        for finding in sorted(report.findings, key=Finding.sort_key):
            lines.append(format_finding(finding))
        lines.append("")
    n_files = len(batch.file_reports)
    n_errors = sum(1 for r in batch.file_reports if r.parse_error is not None)
    lines.append("Summary")
    lines.append(f"{n_files} file{'s' if n_files != 1 else ''} analyzed, "
                 f"{batch.finding_count} findings, {n_errors} parse errors")
    lines.append("Findings by framework:")
    for framework, count in batch.framework_table():
        lines.append(f"  {framework.value}: {count}")
    lines.append(f"Top {TOP_N} smells:")
    if not batch.top_smells:
        lines.append("  (none)")
    for rank, (name, count) in enumerate(batch.top_smells, 1):
        lines.append(f"  {rank}. {name}: {count}")
    return "\n".join(lines) + "\n"


def _field(value: object) -> str:
    text = str(value)
    if any(ch in _NEEDS_QUOTES for ch in text):
        return '"' + text.replace('"', '""') + '"'
    return text


def write_rows(rows: Iterable[Sequence[object]]) -> str:
    """RFC 4180 with LF terminators.

    :mod:`csv` leaves a bare CR unquoted when the terminator is LF, so quoting
    is done here; parsing goes through :mod:`csv` as usual.
    """
    return "".join(",".join(_field(v) for v in row) + "\n" for row in rows)


def render_csv(batch: BatchReport) -> str:
    return write_rows([CSV_HEADER, *(f.as_row() for f in _sorted_findings(batch))])


def read_rows(text: str, header: Sequence[str]) -> list[dict[str, str]]:
    try:
        table = list(csv.reader(io.StringIO(text, newline="")))
    except csv.Error as exc:
        raise ValueError(f"malformed CSV: {exc}") from None
    if not table:
        raise ValueError("empty CSV input")
    found = table[0]
    if tuple(found) != tuple(header):
        raise ValueError(f"unexpected CSV header {','.join(found)!r}; expected {','.join(header)!r}")
    rows = []
    for number, row in enumerate(table[1:], 2):
        if not row:
            continue
        if len(row) != len(header):
            raise ValueError(f"row {number}: expected {len(header)} fields, got {len(row)}")
        rows.append(dict(zip(header, row)))
    return rows


def parse_csv(text: str) -> list[Finding]:
    """Read findings back from :func:`render_csv` output.

    The CSV carries start positions only, so each span collapses to its start.
    """
    findings = []
    for row in read_rows(text, CSV_HEADER):
        line, column = int(row["line"]), int(row["column"])
        findings.append(Finding(
            row["detector_id"], row["smell_name"], Framework(row["framework"]),
            row["file"], Span(line, column, line, column), row["message"], row["advice"],
        ))
    return findings


@dataclass(frozen=True)
class CorpusReport:
    projects: tuple[tuple[str, BatchReport], ...]
    merged: BatchReport


def aggregate_corpus(projects: Mapping[str, Iterable[FileReport]]) -> CorpusReport:
    per_project = tuple((name, aggregate(reports)) for name, reports in sorted(projects.items()))
    merged = aggregate(r for _, batch in per_project for r in batch.file_reports)
    return CorpusReport(per_project, merged)


def render_corpus_csv(corpus: CorpusReport) -> str:
    """One long-format table: per-project framework totals, the merged
    framework distribution, and the merged top-10 smell list."""
    rows: list[Sequence[object]] = [CORPUS_HEADER]
    for name, batch in corpus.projects:
        for framework, count in batch.framework_table():
            rows.append(("project_frameworks", name, framework.value, count))
    for framework, count in corpus.merged.framework_table():
        rows.append(("framework_distribution", "", framework.value, count))
    for smell, count in corpus.merged.top_smells:
        rows.append(("top_smells", "", smell, count))
    return write_rows(rows)
