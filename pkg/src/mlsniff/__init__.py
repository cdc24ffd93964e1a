"""Static detection of machine-learning code smells in Python sources."""

__version__ = "0.1.0"

from mlsniff.astcore import (  # noqa: E402
    FileError,
    ParseError,
    SourceFile,
    Span,
    collect_imports,
    infer_value_kinds,
    is_within_loop,
    parse_source,
)
from mlsniff.engine import (  # noqa: E402
    AnalysisConfig,
    analyze_paths,
    detect_frameworks,
    registry_list,
    run_file_analysis,
)
from mlsniff.evaluation import ConfusionCounts, compute_metrics, match_findings  # noqa: E402
from mlsniff.model import DetectorDescriptor, FileReport, Finding, Framework  # noqa: E402
from mlsniff.reporting import aggregate, render_csv, render_text  # noqa: E402

__all__ = [
    "AnalysisConfig",
    "ConfusionCounts",
    "DetectorDescriptor",
    "FileError",
    "FileReport",
    "Finding",
    "Framework",
    "ParseError",
    "SourceFile",
    "Span",
    "aggregate",
    "analyze_paths",
    "collect_imports",
    "compute_metrics",
    "detect_frameworks",
    "infer_value_kinds",
    "is_within_loop",
    "match_findings",
    "parse_source",
    "registry_list",
    "render_csv",
    "render_text",
    "run_file_analysis",
]
