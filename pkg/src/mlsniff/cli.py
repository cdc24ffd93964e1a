"""Command-line entry point.

Exit codes: 0 success, 1 findings present with ``--fail-on-findings``,
2 usage or I/O error.  Per-file parse errors go to stderr and never change
the exit code.
"""

from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path
from typing import Sequence, TextIO

from mlsniff import __version__
from mlsniff.astcore import FileError
from mlsniff.engine import AnalysisConfig, BatchResult, analyze_paths, registry_list
from mlsniff.evaluation import EmptyEvaluation, UnknownDetector, parse_truth_csv, render_metrics_csv
from mlsniff.model import Framework
from mlsniff.reporting import (
    aggregate,
    aggregate_corpus,
    parse_csv,
    render_corpus_csv,
    render_csv,
    render_text,
    write_rows,
)

EXIT_OK = 0
EXIT_FINDINGS = 1
EXIT_ERROR = 2


class UsageError(Exception):
    pass


def _framework(text: str) -> Framework:
    try:
        return Framework.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mlsniff",
        description="Detect ML-specific code smells in Python sources.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="mode", metavar="MODE")
    sub.required = True

    analyze = sub.add_parser("analyze", help="analyze files or directories")
    analyze.add_argument("paths", nargs="+", metavar="PATH")
    analyze.add_argument("--framework", action="append", type=_framework, dest="frameworks",
                         metavar="NAME", help="restrict to a framework (repeatable)")
    analyze.add_argument("--no-auto-detect", action="store_true",
                         help="run the selected frameworks' detectors regardless of imports")
    analyze.add_argument("--format", choices=("txt", "csv"), default="txt")
    analyze.add_argument("--output", metavar="FILE")
    analyze.add_argument("--fail-on-findings", action="store_true")
    analyze.add_argument("--jobs", type=int, default=1, metavar="N")

    corpus = sub.add_parser("corpus", help="prevalence tables over a directory of projects")
    corpus.add_argument("directory", metavar="DIR")
    corpus.add_argument("--output", metavar="FILE")
    corpus.add_argument("--figures", metavar="DIR", help="also write PNG bar charts here")
    corpus.add_argument("--jobs", type=int, default=1, metavar="N")

    evaluate = sub.add_parser("evaluate", help="score a findings CSV against ground truth")
    evaluate.add_argument("findings", metavar="FINDINGS_CSV")
    evaluate.add_argument("truth", metavar="TRUTH_CSV")
    evaluate.add_argument("--output", metavar="FILE")

    listing = sub.add_parser("list-detectors", help="print the detector registry as CSV")
    listing.add_argument("--output", metavar="FILE")
    return parser


def _warn(message: str, stderr: TextIO) -> None:
    print(f"mlsniff: warning: {message}", file=stderr)


def discover_sources(paths: Sequence[str], stderr: TextIO = sys.stderr) -> list[str]:
    """Expand paths to ``.py`` files; directories are walked without following symlinks."""
    found: set[str] = set()
    for raw in paths:
        path = Path(raw)
        if path.is_dir():
            for root, dirs, files in os.walk(path, followlinks=False):
                dirs.sort()
                for name in sorted(files):
                    candidate = Path(root, name)
                    if name.endswith(".py") and not candidate.is_symlink():
                        found.add(candidate.as_posix())
        elif path.exists():
            if path.suffix == ".py":
                found.add(path.as_posix())
            else:
                _warn(f"skipping non-Python file {raw}", stderr)
        else:
            raise FileError(raw, "no such file or directory")
    return sorted(found)


def _report_problems(result: BatchResult, stderr: TextIO) -> None:
    for error in result.errors:
        _warn(f"skipping unreadable file {error}", stderr)
    for error in result.parse_errors:
        print(f"mlsniff: {error.path}:{error.line}: parse error: {error.message}", file=stderr)


def _emit(text: str, output: str | None, stdout: TextIO) -> None:
    if output is None:
        stdout.write(text)
        return
    try:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    except OSError as exc:
        raise FileError(output, exc.strerror or str(exc)) from exc


def _read_text(path: str) -> str:
    try:
        with open(path, encoding="utf-8", newline="") as fh:
            return fh.read()
    except OSError as exc:
        raise FileError(path, exc.strerror or str(exc)) from exc


def _cmd_analyze(args: argparse.Namespace, stdout: TextIO, stderr: TextIO) -> int:
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    frameworks = frozenset(args.frameworks) if args.frameworks else frozenset(Framework)
    config = AnalysisConfig(enabled_frameworks=frameworks,
                            auto_framework_detection=not args.no_auto_detect)
    result = analyze_paths(discover_sources(args.paths, stderr), config, jobs=args.jobs)
    _report_problems(result, stderr)
    batch = aggregate(result.reports)
    _emit(render_csv(batch) if args.format == "csv" else render_text(batch), args.output, stdout)
    if args.fail_on_findings and batch.finding_count:
        return EXIT_FINDINGS
    return EXIT_OK


def _cmd_corpus(args: argparse.Namespace, stdout: TextIO, stderr: TextIO) -> int:
    if args.jobs < 1:
        raise UsageError("--jobs must be >= 1")
    root = Path(args.directory)
    if not root.is_dir():
        raise FileError(args.directory, "not a directory")
    projects = {}
    for entry in sorted(root.iterdir()):
        if entry.name.startswith(".") or entry.is_symlink():
            continue
        if not entry.is_dir():
            if entry.suffix == ".py":
                _warn(f"{entry.as_posix()} is not inside a project directory; ignored", stderr)
            continue
        result = analyze_paths(discover_sources([entry.as_posix()], stderr), jobs=args.jobs)
        _report_problems(result, stderr)
        projects[entry.name] = result.reports
    corpus = aggregate_corpus(projects)
    _emit(render_corpus_csv(corpus), args.output, stdout)
    if args.figures:
        from mlsniff.plotting import write_corpus_figures

        write_corpus_figures(corpus, args.figures)
    return EXIT_OK


def _cmd_evaluate(args: argparse.Namespace, stdout: TextIO, stderr: TextIO) -> int:
    try:
        findings = parse_csv(_read_text(args.findings))
        truth = parse_truth_csv(_read_text(args.truth))
        text = render_metrics_csv(findings, truth)
    except (UnknownDetector, EmptyEvaluation) as exc:
        raise UsageError(str(exc)) from None
    except ValueError as exc:
        raise UsageError(f"malformed input: {exc}") from None
    _emit(text, args.output, stdout)
    return EXIT_OK


def _cmd_list(args: argparse.Namespace, stdout: TextIO, stderr: TextIO) -> int:
    rows = [("id", "name", "framework", "description")]
    rows += [(d.id, d.name, d.framework.value, f"{d.description} Smell: {d.smell}.")
             for d in registry_list()]
    _emit(write_rows(rows), args.output, stdout)
    return EXIT_OK


_COMMANDS = {
    "analyze": _cmd_analyze,
    "corpus": _cmd_corpus,
    "evaluate": _cmd_evaluate,
    "list-detectors": _cmd_list,
}


def run_cli(argv: Sequence[str] | None = None, stdout: TextIO | None = None,
            stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits 0 for --help/--version and 2 for usage errors
        return exc.code if isinstance(exc.code, int) else EXIT_ERROR
    try:
        return _COMMANDS[args.mode](args, stdout, stderr)
    except UsageError as exc:
        parser.print_usage(stderr)
        print(f"mlsniff: error: {exc}", file=stderr)
    except FileError as exc:
        print(f"mlsniff: error: {exc}", file=stderr)
    return EXIT_ERROR


def main() -> None:
    # LF line endings regardless of platform
    if hasattr(sys.stdout, "reconfigure"):
        sys.stdout.reconfigure(newline="\n")
    sys.exit(run_cli())
