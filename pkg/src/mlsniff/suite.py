"""Per-rule fixture suite.

Fixtures live under ``fixtures/rules/<ID>/``: every rule has at least one
``positive*.py`` and one ``negative*.py``.  ``fixtures/expectations.csv``
lists the annotated lines; any other line of a fixture counts as an
implicit ``absent`` for that fixture's rule, so a stray finding anywhere in
it is a false positive.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

from mlsniff.astcore import SourceFile
from mlsniff.engine import DEFAULT_CONFIG, AnalysisConfig, run_file_analysis
from mlsniff.evaluation import (
    ConfusionCounts,
    GroundTruthEntry,
    Label,
    match_findings,
    parse_truth_csv,
)
from mlsniff.model import Finding
from mlsniff.registry import REGISTRY

FIXTURE_ROOT = Path(__file__).parent / "fixtures"


class FixtureSuiteError(Exception):
    pass


@dataclass(frozen=True)
class Fixture:
    path: str  # relative to the fixture root, posix separators
    rule_id: str

    @property
    def positive(self) -> bool:
        return Path(self.path).name.startswith("positive")


def list_fixtures(root: Path = FIXTURE_ROOT) -> list[Fixture]:
    fixtures = []
    for path in sorted((root / "rules").glob("*/*.py")):
        fixtures.append(Fixture(path.relative_to(root).as_posix(), path.parent.name))
    return fixtures


def check_coverage(fixtures: list[Fixture]) -> None:
    """Every registered rule needs a positive and a negative fixture."""
    missing = []
    for rule_id in sorted(REGISTRY.ids()):
        kinds = {f.positive for f in fixtures if f.rule_id == rule_id}
        if kinds != {True, False}:
            missing.append(rule_id)
    unknown = sorted({f.rule_id for f in fixtures} - REGISTRY.ids())
    if missing or unknown:
        raise FixtureSuiteError(
            f"fixture coverage incomplete: missing={missing} unknown={unknown}")


def load_truth(root: Path = FIXTURE_ROOT) -> list[GroundTruthEntry]:
    return parse_truth_csv((root / "expectations.csv").read_text(encoding="utf-8"))


def expand_truth(entries: list[GroundTruthEntry], fixtures: list[Fixture],
                 sources: dict[str, SourceFile]) -> list[GroundTruthEntry]:
    annotated = {(e.file, e.line, e.detector_id) for e in entries}
    expanded = list(entries)
    for fixture in fixtures:
        for line in range(1, sources[fixture.path].line_count + 1):
            if (fixture.path, line, fixture.rule_id) not in annotated:
                expanded.append(GroundTruthEntry(fixture.path, line, fixture.rule_id, Label.ABSENT))
    return expanded


def _read(root: Path, rel: str) -> SourceFile:
    try:
        return SourceFile.from_bytes(rel, (root / rel).read_bytes())
    except OSError as exc:
        raise FixtureSuiteError(f"fixture {rel} cannot be read: {exc}") from exc


def collect_findings(fixtures: list[Fixture], sources: dict[str, SourceFile],
                     config: AnalysisConfig) -> list[Finding]:
    findings: list[Finding] = []
    for fixture in fixtures:
        report = run_file_analysis(sources[fixture.path], config)
        if report.parse_error is not None:
            raise FixtureSuiteError(f"fixture {fixture.path} does not parse: {report.parse_error}")
        findings.extend(report.findings)
    return findings


def run_fixture_suite(config: AnalysisConfig = DEFAULT_CONFIG,
                      root: Path | None = None) -> ConfusionCounts:
    root = FIXTURE_ROOT if root is None else Path(root)
    fixtures = list_fixtures(root)
    check_coverage(fixtures)
    truth = load_truth(root)
    known = {f.path for f in fixtures}
    for entry in truth:
        if entry.file not in known:
            raise FixtureSuiteError(f"expectations reference missing fixture {entry.file}")
    sources = {f.path: _read(root, f.path) for f in fixtures}
    findings = collect_findings(fixtures, sources, config)
    return match_findings(findings, expand_truth(truth, fixtures, sources))
