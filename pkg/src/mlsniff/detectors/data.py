"""Pandas and NumPy rules."""

from __future__ import annotations

import ast
from typing import Iterator

from mlsniff.astcore import Node, NodeKind, ValueKind, dotted_name
from mlsniff.detectors.base import RuleMatchContext, run_framework, scope_statements
from mlsniff.model import Finding, Framework
from mlsniff.registry import Match, rule

_PANDAS_DTYPE_READERS = frozenset({"pandas.read_csv", "pandas.read_table", "pandas.read_excel"})

_NP_GROWTH = frozenset(
    f"numpy.{n}" for n in ("append", "concatenate", "vstack", "hstack", "array", "asarray")
)
_NP_REDUCTIONS = frozenset(
    f"numpy.{n}"
    for n in ("sum", "mean", "std", "var", "min", "max", "median",
              "argmax", "argmin", "prod", "any", "all")
)
_NP_SHAPED = frozenset(f"numpy.{n}" for n in ("zeros", "ones", "empty", "full"))
_NP_LITERAL = frozenset({"numpy.array", "numpy.asarray"})


# -- pandas -----------------------------------------------------------------


@rule(
    "PD01",
    "Chain Indexing",
    "Consecutive subscripts such as df['a']['b'] index an intermediate copy.",
    "Use a single .loc/.iloc indexer, e.g. df.loc[row, 'col'].",
)
def chain_indexing(ctx: RuleMatchContext) -> Iterator[Match]:
    if not ctx.imports_root("pandas"):
        return
    for node in ctx.tree.nodes_of(NodeKind.SUBSCRIPT):
        if isinstance(node.raw.value, ast.Subscript):
            yield node, f"Chain indexing detected: {ctx.tree.segment(node.span)}"


def _is_column_list_selection(node: Node, name: str) -> bool:
    raw = node.raw
    return (
        isinstance(raw, ast.Subscript)
        and isinstance(raw.value, ast.Name)
        and raw.value.id == name
        and isinstance(raw.slice, ast.List)
    )


@rule(
    "PD02",
    "Column Selection Checker",
    "A DataFrame loaded with pandas read_* is never narrowed to a list of columns in its scope.",
    "Load only the needed columns (usecols=...) or select them explicitly with df[[...]].",
)
def column_selection(ctx: RuleMatchContext) -> Iterator[Match]:
    scopes = [ctx.tree.root, *ctx.tree.nodes_of(NodeKind.FUNCTION_DEF)]
    for scope in scopes:
        nodes = list(scope_statements(ctx.tree, scope))
        for node in nodes:
            raw = node.raw
            if not isinstance(raw, (ast.Assign, ast.AnnAssign)) or raw.value is None:
                continue
            value = raw.value
            if not isinstance(value, ast.Call):
                continue
            qualified = ctx.imports.qualify(dotted_name(value.func)) or ""
            if not qualified.startswith("pandas.read_"):
                continue
            if any(k.arg == "usecols" for k in value.keywords):
                continue
            targets = raw.targets if isinstance(raw, ast.Assign) else [raw.target]
            for target in targets:
                if not isinstance(target, ast.Name):
                    continue
                if any(_is_column_list_selection(n, target.id) for n in nodes):
                    continue
                call = ctx.tree.node_for(value)
                yield call, f"DataFrame '{target.id}' is loaded with all columns and never column-selected"


@rule(
    "PD03",
    "DataFrame Conversion Checker",
    "Accessing .values on a DataFrame gives an ambiguous, dtype-lossy conversion.",
    "Use df.to_numpy() instead of df.values.",
)
def dataframe_conversion(ctx: RuleMatchContext) -> Iterator[Match]:
    for node in ctx.tree.nodes_of(NodeKind.ATTRIBUTE):
        raw = node.raw
        if raw.attr != "values" or not isinstance(raw.value, ast.Name):
            continue
        if ctx.kind_at(raw.value.id, node) is ValueKind.DATAFRAME:
            yield node, f"'{raw.value.id}.values' used for DataFrame conversion"


@rule(
    "PD04",
    "Datatype Checker",
    "A pandas reader call does not declare column dtypes.",
    "Pass dtype={...} so column types are explicit and memory use is predictable.",
)
def datatype(ctx: RuleMatchContext) -> Iterator[Match]:
    for call in ctx.calls:
        qualified = ctx.qualified(call)
        if qualified in _PANDAS_DTYPE_READERS and not ctx.has_keyword(call, "dtype"):
            yield call, f"{qualified.rsplit('.', 1)[1]} called without dtype"


# -- numpy ------------------------------------------------------------------


@rule(
    "NP01",
    "Array Creation Efficiency",
    "A NumPy array is created or grown (append/concatenate/stack/array) inside a loop.",
    "Preallocate the array or collect items in a list and convert once after the loop.",
)
def array_creation(ctx: RuleMatchContext) -> Iterator[Match]:
    for call in ctx.calls:
        qualified = ctx.qualified(call)
        if qualified in _NP_GROWTH and ctx.in_loop(call):
            yield call, f"{qualified.replace('numpy.', 'np.')} called inside a loop"


def _has_axis(ctx: RuleMatchContext, call: Node) -> bool:
    # axis is the second positional parameter of every listed reduction
    return ctx.has_keyword(call, "axis") or call.payload["n_args"] >= 2


@rule(
    "NP02",
    "Missing Axis Specification",
    "A NumPy reduction is called without an explicit axis.",
    "Pass axis=... so the reduced dimension is explicit.",
)
def missing_axis(ctx: RuleMatchContext) -> Iterator[Match]:
    for call in ctx.calls:
        qualified = ctx.qualified(call)
        if qualified in _NP_REDUCTIONS and not _has_axis(ctx, call):
            yield call, f"{qualified.replace('numpy.', 'np.')} called without axis"


def _np_seeded(ctx: RuleMatchContext) -> bool:
    for call in ctx.calls:
        qualified = ctx.qualified(call)
        if qualified == "numpy.random.seed":
            return True
        if qualified == "numpy.random.default_rng" and (call.raw.args or call.raw.keywords):
            return True
    return False


@rule(
    "NP03",
    "Randomness Control Checker",
    "numpy.random is used in a module that never seeds it.",
    "Call np.random.seed(...) or draw from np.random.default_rng(seed).",
)
def numpy_randomness(ctx: RuleMatchContext) -> Iterator[Match]:
    if _np_seeded(ctx):
        return
    for call in ctx.calls:
        qualified = ctx.qualified(call) or ""
        if qualified.startswith("numpy.random."):
            yield call, f"{qualified.replace('numpy.', 'np.')} used without a seed"


def _literal_rank(ctx: RuleMatchContext, expr: ast.AST) -> int | None:
    if not isinstance(expr, ast.Call):
        return None
    qualified = ctx.imports.qualify(dotted_name(expr.func))
    if qualified in _NP_SHAPED:
        shape = expr.args[0] if expr.args else next(
            (k.value for k in expr.keywords if k.arg == "shape"), None
        )
        if isinstance(shape, ast.Tuple) and all(
            isinstance(e, ast.Constant) and type(e.value) is int for e in shape.elts
        ):
            return len(shape.elts)
        if isinstance(shape, ast.Constant) and type(shape.value) is int:
            return 1
        return None
    if qualified in _NP_LITERAL and expr.args:
        return _nesting_depth(expr.args[0])
    return None


def _nesting_depth(expr: ast.AST) -> int | None:
    depth = 0
    while isinstance(expr, (ast.List, ast.Tuple)):
        if not expr.elts:
            return None
        depth += 1
        expr = expr.elts[0]
    if depth == 0 or not isinstance(expr, ast.Constant):
        return None
    return depth


@rule(
    "NP04",
    "Broadcasting Risk",
    "An arithmetic operation combines NumPy arrays whose literal shapes differ in rank.",
    "Reshape operands explicitly (e.g. with [:, None] or reshape) before combining them.",
)
def broadcasting_risk(ctx: RuleMatchContext) -> Iterator[Match]:
    for node in ctx.tree.nodes_of(NodeKind.BIN_OP):
        left = _literal_rank(ctx, node.raw.left)
        right = _literal_rank(ctx, node.raw.right)
        if left is not None and right is not None and left != right:
            yield node, f"operands of rank {left} and {right} are implicitly broadcast"


def detect_pandas(ctx: RuleMatchContext) -> list[Finding]:
    return run_framework(ctx, Framework.PANDAS)


def detect_numpy(ctx: RuleMatchContext) -> list[Finding]:
    return run_framework(ctx, Framework.NUMPY)
