from __future__ import annotations

import textwrap

from mlsniff.astcore import SourceFile, parse_source
from mlsniff.detectors.base import RuleMatchContext
from mlsniff.engine import DEFAULT_CONFIG, AnalysisConfig, run_file_analysis
from mlsniff.model import Finding


def src(text: str, path: str = "sample.py") -> SourceFile:
    return SourceFile(path, textwrap.dedent(text))


def tree_of(text: str):
    return parse_source(src(text))


def ctx_of(text: str) -> RuleMatchContext:
    return RuleMatchContext.build(tree_of(text))


def findings(text: str, config: AnalysisConfig = DEFAULT_CONFIG, path: str = "sample.py") -> tuple[Finding, ...]:
    report = run_file_analysis(src(text, path), config)
    assert report.parse_error is None, report.parse_error
    return report.findings


def hits(text: str, rule: str | None = None) -> list[tuple[str, int]]:
    """(detector_id, line) pairs, optionally for one rule only."""
    return [(f.detector_id, f.line) for f in findings(text)
            if rule is None or f.detector_id == rule]


def lines_for(text: str, rule: str) -> list[int]:
    return [line for _, line in hits(text, rule)]
