"""Hugging Face, scikit-learn and framework-agnostic rules."""

from __future__ import annotations

import ast
import re
from typing import Iterator

from mlsniff.astcore import Node, NodeKind, ValueKind, dotted_name
from mlsniff.detectors.base import (
    RuleMatchContext,
    header_span,
    names_in,
    numeric_literal,
    run_framework,
    scope_statements,
)
from mlsniff.model import Finding, Framework
from mlsniff.registry import Match, rule

_TOKENIZER_METHODS = frozenset({"encode", "encode_plus", "batch_encode_plus"})
_TRAINERS = frozenset({"Trainer", "Seq2SeqTrainer"})

_TRANSFORMER_SUFFIXES = ("scaler", "normalizer", "imputer", "encoder")
_CV_NAMES = frozenset(
    {"cross_val_score", "cross_validate", "KFold", "StratifiedKFold",
     "GridSearchCV", "RandomizedSearchCV"}
)
_SCALE_SENSITIVE = frozenset(
    {"SVC", "SVR", "KNeighborsClassifier", "KNeighborsRegressor", "LogisticRegression"}
)
_KNOWN_ESTIMATORS = _SCALE_SENSITIVE | {
    "LinearSVC", "LinearSVR", "RandomForestClassifier", "RandomForestRegressor",
    "GradientBoostingClassifier", "GradientBoostingRegressor",
    "DecisionTreeClassifier", "DecisionTreeRegressor", "ExtraTreesClassifier",
    "ExtraTreesRegressor", "AdaBoostClassifier", "AdaBoostRegressor",
    "MLPClassifier", "MLPRegressor", "Ridge", "Lasso", "ElasticNet",
    "SGDClassifier", "SGDRegressor", "KMeans", "DBSCAN",
}
_BALANCED_METRICS = frozenset(
    {"f1_score", "precision_score", "recall_score", "roc_auc_score", "classification_report"}
)

_ALLOWED_INTS = frozenset({0, 1, -1, 2})
_ALLOWED_FLOATS = frozenset({0.0, 1.0, -1.0})
_UPPER_CASE = re.compile(r"^_*[A-Z][A-Z0-9_]*$")
_STDLIB_RANDOM = frozenset(
    f"random.{n}" for n in ("random", "randint", "choice", "shuffle", "sample", "uniform")
)
_HYPERPARAMETERS = frozenset(
    {"lr", "learning_rate", "epochs", "batch_size", "n_estimators",
     "max_depth", "num_layers", "hidden_size"}
)


# -- hugging face -----------------------------------------------------------


def _from_pretrained_calls(ctx: RuleMatchContext) -> Iterator[Node]:
    return ctx.method_calls("from_pretrained")


@rule(
    "HF01",
    "Model Versioning Not Specified",
    "from_pretrained() loads a hub artifact without pinning a revision.",
    "Pass revision='<commit or tag>' so the loaded weights cannot change underneath you.",
)
def model_versioning(ctx: RuleMatchContext) -> Iterator[Match]:
    for call in _from_pretrained_calls(ctx):
        if not ctx.has_keyword(call, "revision"):
            yield call, f"{ctx.callee(call) or 'from_pretrained'} without revision"


def _tokenizer_receiver(ctx: RuleMatchContext, call: Node) -> str | None:
    func = call.raw.func
    if isinstance(func, ast.Name):
        name = func.id
    elif (
        isinstance(func, ast.Attribute)
        and func.attr in _TOKENIZER_METHODS
        and isinstance(func.value, ast.Name)
    ):
        name = func.value.id
    else:
        return None
    return name if ctx.kind_at(name, call) is ValueKind.TOKENIZER else None


@rule(
    "HF02",
    "Deterministic Tokenization Settings Not Specified",
    "A tokenizer is applied without truncation or padding settings.",
    "Pass truncation=... and padding=... so encoded lengths are deterministic.",
)
def tokenization_settings(ctx: RuleMatchContext) -> Iterator[Match]:
    for call in ctx.calls:
        name = _tokenizer_receiver(ctx, call)
        if name is None:
            continue
        if not (ctx.has_keyword(call, "truncation") or ctx.has_keyword(call, "padding")):
            yield call, f"tokenizer '{name}' called without truncation or padding"


def _mentions(expr: ast.AST, suffix: str) -> bool:
    for node in ast.walk(expr):
        name = node.id if isinstance(node, ast.Name) else (
            node.attr if isinstance(node, ast.Attribute) else None
        )
        if name and name.endswith(suffix):
            return True
    return False


def _training_args_calls(ctx: RuleMatchContext) -> Iterator[Node]:
    return (c for c in ctx.calls if (ctx.short_name(c) or "").endswith("TrainingArguments"))


def _loads_best_model(ctx: RuleMatchContext) -> bool:
    for call in _training_args_calls(ctx):
        for kw in call.raw.keywords:
            if kw.arg == "load_best_model_at_end" and not (
                isinstance(kw.value, ast.Constant) and kw.value.value is False
            ):
                return True
    return False


@rule(
    "HF03",
    "Early Stopping Not Implemented",
    "A Trainer is built with no EarlyStoppingCallback and no load_best_model_at_end.",
    "Add EarlyStoppingCallback(...) and set load_best_model_at_end=True.",
)
def early_stopping(ctx: RuleMatchContext) -> Iterator[Match]:
    if _loads_best_model(ctx):
        return
    for call in ctx.calls:
        if ctx.short_name(call) not in _TRAINERS:
            continue
        arguments = [*call.raw.args, *(k.value for k in call.raw.keywords)]
        if not any(_mentions(a, "EarlyStoppingCallback") for a in arguments):
            yield call, f"{ctx.short_name(call)} without early stopping"


@rule(
    "HF04",
    "Efficient Data Loading Not Detected",
    "TrainingArguments does not configure parallel data loading.",
    "Set dataloader_num_workers=... to overlap data loading with training.",
)
def efficient_data_loading(ctx: RuleMatchContext) -> Iterator[Match]:
    for call in _training_args_calls(ctx):
        if not ctx.has_keyword(call, "dataloader_num_workers"):
            yield call, f"{ctx.short_name(call)} without dataloader_num_workers"


@rule(
    "HF05",
    "Tokenizer Caching",
    "from_pretrained() is called inside a loop, reloading the artifact on every iteration.",
    "Load tokenizers and models once, outside the loop, and reuse them.",
)
def tokenizer_caching(ctx: RuleMatchContext) -> Iterator[Match]:
    for call in _from_pretrained_calls(ctx):
        if ctx.in_loop(call):
            yield call, f"{ctx.callee(call) or 'from_pretrained'} inside a loop"


@rule(
    "HF06",
    "Pipeline Component Usage",
    "A transformers pipeline() is constructed inside a loop.",
    "Build the pipeline once outside the loop and pass batches to it.",
)
def pipeline_usage(ctx: RuleMatchContext) -> Iterator[Match]:
    for call in ctx.calls:
        qualified = ctx.qualified(call) or ""
        if (
            qualified.startswith("transformers")
            and qualified.rsplit(".", 1)[-1] == "pipeline"
            and ctx.in_loop(call)
        ):
            yield call, "pipeline() constructed inside a loop"


@rule(
    "HF07",
    "Training Argument Configuration",
    "TrainingArguments does not set a seed.",
    "Set seed=... in TrainingArguments for reproducible runs.",
)
def training_arguments(ctx: RuleMatchContext) -> Iterator[Match]:
    for call in _training_args_calls(ctx):
        if not ctx.has_keyword(call, "seed"):
            yield call, f"{ctx.short_name(call)} without seed"


# -- scikit-learn -----------------------------------------------------------


def _is_transformer_name(name: str | None) -> bool:
    return bool(name) and name.lower().endswith(_TRANSFORMER_SUFFIXES)


def _transformer_receiver(ctx: RuleMatchContext, call: Node) -> bool:
    """Receiver of ``.fit``/``.fit_transform`` is a scaler, imputer, encoder, ..."""
    receiver = call.raw.func.value
    if isinstance(receiver, ast.Call):
        return _is_transformer_name((dotted_name(receiver.func) or "").rsplit(".", 1)[-1])
    name = dotted_name(receiver)
    if name is None:
        return False
    if _is_transformer_name(name.rsplit(".", 1)[-1]):
        return True
    return name in _transformer_bound_names(ctx, call)


def _transformer_bound_names(ctx: RuleMatchContext, use: Node) -> set[str]:
    scope = ctx.tree.scope_of(use)
    names = set()
    for node in scope_statements(ctx.tree, scope):
        raw = node.raw
        if (
            isinstance(raw, ast.Assign)
            and isinstance(raw.value, ast.Call)
            and node.span.end <= use.span.start
            and _is_transformer_name((dotted_name(raw.value.func) or "").rsplit(".", 1)[-1])
        ):
            names.update(t.id for t in raw.targets if isinstance(t, ast.Name))
    return names


def _fit_calls(ctx: RuleMatchContext) -> Iterator[Node]:
    for call in ctx.calls:
        func = call.raw.func
        if isinstance(func, ast.Attribute) and func.attr in ("fit", "fit_transform"):
            yield call


@rule(
    "SK01",
    "Data Leakage Checker",
    "A scaler/transformer is fitted on data that is only afterwards split into train and test sets.",
    "Split first, then fit preprocessing on the training split only (or use a Pipeline).",
)
def data_leakage(ctx: RuleMatchContext) -> Iterator[Match]:
    splits = [c for c in ctx.calls if ctx.short_name(c) == "train_test_split"]
    if not splits:
        return
    for call in _fit_calls(ctx):
        if not _transformer_receiver(ctx, call):
            continue
        transformed = set()
        for arg in [*call.raw.args, *(k.value for k in call.raw.keywords)]:
            transformed |= names_in(arg)
        parent = ctx.tree.parent(call)
        if parent is not None and isinstance(parent.raw, ast.Assign):
            for target in parent.raw.targets:
                transformed |= names_in(target)
        scope = ctx.tree.scope_of(call)
        for split in splits:
            if ctx.tree.scope_of(split) is not scope or split.span.start <= call.span.start:
                continue
            used = set()
            for arg in [*split.raw.args, *(k.value for k in split.raw.keywords)]:
                used |= names_in(arg)
            if used & transformed:
                leaked = ", ".join(sorted(used & transformed))
                yield call, f"{call.raw.func.attr}() before train_test_split on {leaked}"
                break


@rule(
    "SK02",
    "Cross Validation Checker",
    "An estimator is fitted in a module that never cross-validates.",
    "Estimate performance with cross_val_score, KFold or a CV search.",
)
def cross_validation(ctx: RuleMatchContext) -> Iterator[Match]:
    if ctx.referenced_names & _CV_NAMES:
        return
    for call in ctx.method_calls("fit"):
        if not _transformer_receiver(ctx, call):
            yield call, ".fit() without any cross-validation in the module"


@rule(
    "SK03",
    "Train Test Split Randomness",
    "train_test_split() is called without random_state.",
    "Pass random_state=... for a reproducible split.",
)
def split_randomness(ctx: RuleMatchContext) -> Iterator[Match]:
    for call in ctx.calls:
        if ctx.short_name(call) == "train_test_split" and not ctx.has_keyword(call, "random_state"):
            yield call, "train_test_split without random_state"


def _is_scaler_ctor(name: str | None) -> bool:
    return bool(name) and (name.endswith("Scaler") or name == "Normalizer")


@rule(
    "SK04",
    "Scaling Checker",
    "A scale-sensitive estimator is used in a module that never scales features.",
    "Scale features first, e.g. make_pipeline(StandardScaler(), estimator).",
)
def scaling(ctx: RuleMatchContext) -> Iterator[Match]:
    if any(_is_scaler_ctor(ctx.short_name(c)) for c in ctx.calls):
        return
    for call in ctx.calls:
        name = ctx.short_name(call)
        if name in _SCALE_SENSITIVE:
            yield call, f"{name} used without feature scaling"


@rule(
    "SK05",
    "Metrics Checker",
    "accuracy_score is the only classification metric in the module.",
    "Also report f1/precision/recall/ROC-AUC, which stay informative on imbalanced data.",
)
def metrics(ctx: RuleMatchContext) -> Iterator[Match]:
    if ctx.referenced_names & _BALANCED_METRICS:
        return
    for call in ctx.calls_named("accuracy_score"):
        yield call, "accuracy_score used without balanced metrics"


@rule(
    "SK06",
    "Default Hyperparameter Checker",
    "A known estimator is constructed with all-default hyperparameters.",
    "Set the key hyperparameters explicitly (and tune them).",
)
def default_hyperparameters(ctx: RuleMatchContext) -> Iterator[Match]:
    for call in ctx.calls:
        name = ctx.short_name(call)
        if name in _KNOWN_ESTIMATORS and isinstance(call.raw.func, (ast.Name, ast.Attribute)):
            if not call.raw.args and not call.raw.keywords:
                yield call, f"{name}() uses default hyperparameters"


# -- general ----------------------------------------------------------------


def _is_magic(value: int | float) -> bool:
    if isinstance(value, int):
        return value not in _ALLOWED_INTS
    return value not in _ALLOWED_FLOATS


def _in_constant_assignment(ctx: RuleMatchContext, node: Node) -> bool:
    for anc in ctx.tree.ancestors(node):
        raw = anc.raw
        if isinstance(raw, ast.Assign):
            return (
                len(raw.targets) == 1
                and isinstance(raw.targets[0], ast.Name)
                and bool(_UPPER_CASE.match(raw.targets[0].id))
            )
        if isinstance(raw, ast.stmt):
            return False
    return False


def _magic_operands(ctx: RuleMatchContext) -> Iterator[ast.AST]:
    for node in ctx.tree.walk():
        raw = node.raw
        if isinstance(raw, ast.Call):
            yield from raw.args
            yield from (k.value for k in raw.keywords)
        elif isinstance(raw, ast.BinOp):
            yield raw.left
            yield raw.right


@rule(
    "ML01",
    "Magic Number Checker",
    "An unexplained numeric literal is passed to a call or used in arithmetic.",
    "Name the value as an UPPER_CASE constant or move it to configuration.",
    smell="Magic number detected: <value>",
)
def magic_numbers(ctx: RuleMatchContext) -> Iterator[Match]:
    for operand in _magic_operands(ctx):
        value = numeric_literal(operand)
        if value is None or not _is_magic(value):
            continue
        node = ctx.tree.node_for(operand)
        if _in_constant_assignment(ctx, node):
            continue
        yield node, f"Magic number detected: {value!r}"


@rule(
    "ML02",
    "Randomness Control Checker",
    "The standard random module is used in a module that never calls random.seed.",
    "Call random.seed(...) once at start-up for reproducibility.",
)
def stdlib_randomness(ctx: RuleMatchContext) -> Iterator[Match]:
    if any(True for _ in ctx.calls_resolving_to("random.seed")):
        return
    for call in ctx.calls_resolving_to(*_STDLIB_RANDOM):
        yield call, f"{ctx.qualified(call)} used without random.seed"


@rule(
    "ML03",
    "Hyperparameter Management",
    "A hyperparameter is hard-coded as a literal keyword argument.",
    "Externalize hyperparameters to a configuration file or named constants.",
)
def hyperparameters(ctx: RuleMatchContext) -> Iterator[Match]:
    for node in ctx.tree.nodes_of(NodeKind.KEYWORD):
        raw = node.raw
        if raw.arg in _HYPERPARAMETERS:
            value = numeric_literal(raw.value)
            if value is not None:
                yield node, f"hard-coded hyperparameter {raw.arg}={value!r}"


def _statement_count(func: ast.AST) -> int:
    count = 0
    stack = list(func.body)
    while stack:
        stmt = stack.pop()
        count += 1
        if isinstance(stmt, (ast.FunctionDef, ast.AsyncFunctionDef, ast.ClassDef)):
            continue
        for child in ast.iter_child_nodes(stmt):
            if isinstance(child, ast.stmt):
                stack.append(child)
            elif isinstance(child, (ast.excepthandler, ast.match_case)):
                stack.extend(child.body)
    return count


@rule(
    "ML04",
    "Missing Function Docstring",
    "A function with more than 5 statements has no docstring.",
    "Add a docstring describing purpose, inputs and outputs.",
)
def function_docstring(ctx: RuleMatchContext) -> Iterator[Match]:
    for node in ctx.tree.nodes_of(NodeKind.FUNCTION_DEF):
        if node.payload["has_docstring"]:
            continue
        count = _statement_count(node.raw)
        if count > 5:
            yield header_span(node), f"Missing docstring for function: {node.payload['name']} ({count} statements)"


def detect_huggingface(ctx: RuleMatchContext) -> list[Finding]:
    return run_framework(ctx, Framework.HUGGING_FACE)


def detect_sklearn(ctx: RuleMatchContext) -> list[Finding]:
    return run_framework(ctx, Framework.SCIKIT_LEARN)


def detect_general_ml(ctx: RuleMatchContext) -> list[Finding]:
    return run_framework(ctx, Framework.GENERAL_ML)
