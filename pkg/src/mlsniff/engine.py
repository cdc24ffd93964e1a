"""Framework detection and per-file / batch orchestration."""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

from mlsniff import detectors  # noqa: F401  (registers the rules)
from mlsniff.astcore import (
    FileError,
    ImportTable,
    NodeKind,
    ParseError,
    SourceFile,
    SyntaxTree,
    parse_source,
    read_source,
)
from mlsniff.detectors.base import RuleMatchContext
from mlsniff.model import DetectorDescriptor, FileReport, Finding, Framework
from mlsniff.registry import REGISTRY, Detector

log = logging.getLogger(__name__)

FRAMEWORK_ROOTS = {
    "pandas": Framework.PANDAS,
    "numpy": Framework.NUMPY,
    "sklearn": Framework.SCIKIT_LEARN,
    "tensorflow": Framework.TENSORFLOW,
    "keras": Framework.TENSORFLOW,
    "torch": Framework.PYTORCH,
    "transformers": Framework.HUGGING_FACE,
    "datasets": Framework.HUGGING_FACE,
}


def registry_list() -> list[DetectorDescriptor]:
    return [d.descriptor for d in REGISTRY]


def detect_frameworks(imports: ImportTable, tree: SyntaxTree | None = None) -> frozenset[Framework]:
    """Frameworks a file uses, judged from its imports.

    General ML checks apply whenever some ML framework is imported or, given
    ``tree``, the file defines any function or class.
    """
    found = {FRAMEWORK_ROOTS[r] for r in imports.roots() if r in FRAMEWORK_ROOTS}
    if found or (
        tree is not None
        and any(True for _ in tree.nodes_of(NodeKind.FUNCTION_DEF, NodeKind.CLASS_DEF))
    ):
        found.add(Framework.GENERAL_ML)
    return frozenset(found)


@dataclass(frozen=True)
class AnalysisConfig:
    enabled_frameworks: frozenset[Framework] = frozenset(Framework)
    enabled_detectors: frozenset[str] = field(default_factory=REGISTRY.ids)
    auto_framework_detection: bool = True

    def __post_init__(self) -> None:
        object.__setattr__(self, "enabled_frameworks", frozenset(self.enabled_frameworks))
        object.__setattr__(self, "enabled_detectors", frozenset(self.enabled_detectors))
        unknown = self.enabled_detectors - REGISTRY.ids()
        if unknown:
            raise ValueError(f"unknown detector ids: {', '.join(sorted(unknown))}")

    def active_frameworks(self, detected: Iterable[Framework]) -> frozenset[Framework]:
        if self.auto_framework_detection:
            return frozenset(detected) & self.enabled_frameworks
        return self.enabled_frameworks

    def detectors_for(self, frameworks: frozenset[Framework]) -> list[Detector]:
        return [
            d for d in REGISTRY
            if d.framework in frameworks and d.id in self.enabled_detectors
        ]


DEFAULT_CONFIG = AnalysisConfig()


def sort_findings(findings: Iterable[Finding]) -> tuple[Finding, ...]:
    """Sort by (line, column, detector_id) and drop duplicate (detector_id, span) pairs."""
    seen: set[tuple] = set()
    unique = []
    for f in sorted(findings, key=Finding.sort_key):
        key = (f.file, f.detector_id, f.span)
        if key not in seen:
            seen.add(key)
            unique.append(f)
    return tuple(unique)


def analyze_tree(tree: SyntaxTree, config: AnalysisConfig = DEFAULT_CONFIG) -> tuple[Finding, ...]:
    ctx = RuleMatchContext.build(tree)
    frameworks = config.active_frameworks(detect_frameworks(ctx.imports, tree))
    findings: list[Finding] = []
    for detector in config.detectors_for(frameworks):
        findings.extend(detector.run(ctx))
    return sort_findings(findings)


def run_file_analysis(file: SourceFile, config: AnalysisConfig = DEFAULT_CONFIG) -> FileReport:
    try:
        tree = parse_source(file)
    except ParseError as exc:
        return FileReport(file.path, (), exc)
    return FileReport(file.path, analyze_tree(tree, config))


def analyze_file(path: str | Path, config: AnalysisConfig = DEFAULT_CONFIG) -> FileReport:
    """Read and analyze one file; raises :class:`FileError` if it cannot be read."""
    return run_file_analysis(read_source(path), config)


def _analyze_or_error(path: str, config: AnalysisConfig) -> FileReport | FileError:
    try:
        return analyze_file(path, config)
    except FileError as exc:
        return exc


@dataclass(frozen=True)
class BatchResult:
    reports: tuple[FileReport, ...]
    errors: tuple[FileError, ...] = ()

    @property
    def parse_errors(self) -> list[ParseError]:
        return [r.parse_error for r in self.reports if r.parse_error is not None]


def analyze_paths(
    paths: Sequence[str | Path],
    config: AnalysisConfig = DEFAULT_CONFIG,
    jobs: int = 1,
) -> BatchResult:
    """Analyze files, optionally in a process pool; output order is path-sorted."""
    unique = sorted({Path(p).as_posix() for p in paths})
    if jobs > 1 and len(unique) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(_analyze_or_error, unique, [config] * len(unique),
                                    chunksize=max(1, len(unique) // (jobs * 4))))
    else:
        results = [_analyze_or_error(p, config) for p in unique]
    reports = []
    errors = []
    for result in results:
        if isinstance(result, FileError):
            log.warning("skipping %s", result)
            errors.append(result)
        else:
            reports.append(result)
    return BatchResult(tuple(reports), tuple(errors))
