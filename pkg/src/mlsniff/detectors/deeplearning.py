"""PyTorch and TensorFlow/Keras rules."""

from __future__ import annotations

import ast
import re
from typing import Iterator

from mlsniff.astcore import NodeKind, dotted_name
from mlsniff.detectors.base import RuleMatchContext, header_span, run_framework
from mlsniff.model import Finding, Framework
from mlsniff.registry import Match, rule

_TORCH_RANDOM = re.compile(r"^torch\.rand\w*$")
_TORCH_SEEDS = frozenset({"torch.manual_seed", "torch.random.manual_seed"})
_DENSE_LAYERS = frozenset({"Linear", "Conv1d", "Conv2d", "Conv3d"})
_KERAS_MODELS = frozenset({"Sequential", "Model"})


# -- pytorch ----------------------------------------------------------------


@rule(
    "PT01",
    "Deterministic Algorithm Usage Checker",
    "Training code calls .backward() but never enables deterministic algorithms.",
    "Call torch.use_deterministic_algorithms(True) for reproducible training.",
)
def deterministic_algorithms(ctx: RuleMatchContext) -> Iterator[Match]:
    if any(ctx.short_name(c) == "use_deterministic_algorithms" for c in ctx.calls):
        return
    for call in ctx.method_calls("backward"):
        yield call, ".backward() without torch.use_deterministic_algorithms"


def _is_no_grad(ctx: RuleMatchContext, expr: ast.AST) -> bool:
    if not isinstance(expr, ast.Call):
        return False
    name = dotted_name(expr.func) or ""
    return name.rsplit(".", 1)[-1] == "no_grad"


@rule(
    "PT02",
    "Model Evaluation Checker",
    "Inference runs under torch.no_grad() but the model is never switched to eval mode.",
    "Call model.eval() before evaluation so dropout and batch norm behave deterministically.",
)
def torch_model_evaluation(ctx: RuleMatchContext) -> Iterator[Match]:
    if any(True for _ in ctx.method_calls("eval")):
        return
    for node in ctx.tree.nodes_of(NodeKind.WITH):
        for item in node.raw.items:
            if _is_no_grad(ctx, item.context_expr):
                yield ctx.tree.node_for(item.context_expr), "torch.no_grad() block without model.eval()"


@rule(
    "PT03",
    "Randomness Control Checker",
    "torch random tensors are drawn in a module that never calls torch.manual_seed.",
    "Call torch.manual_seed(...) before generating random tensors.",
)
def torch_randomness(ctx: RuleMatchContext) -> Iterator[Match]:
    if any(ctx.qualified(c) in _TORCH_SEEDS for c in ctx.calls):
        return
    for call in ctx.calls:
        qualified = ctx.qualified(call) or ""
        if _TORCH_RANDOM.match(qualified):
            yield call, f"{qualified} used without torch.manual_seed"


def _init_calls(cls: ast.ClassDef) -> list[str]:
    for stmt in cls.body:
        if isinstance(stmt, (ast.FunctionDef, ast.AsyncFunctionDef)) and stmt.name == "__init__":
            names = []
            for node in ast.walk(stmt):
                if isinstance(node, ast.Call):
                    name = dotted_name(node.func)
                    if name:
                        names.append(name.rsplit(".", 1)[-1])
            return names
    return []


@rule(
    "PT04",
    "Batch Normalisation Checker",
    "A module stacks two or more linear/convolutional layers with no batch normalisation layer.",
    "Consider nn.BatchNorm1d/2d/3d between layers to stabilise training.",
)
def batch_normalisation(ctx: RuleMatchContext) -> Iterator[Match]:
    for node in ctx.tree.nodes_of(NodeKind.CLASS_DEF):
        bases = [b or "" for b in node.payload["bases"]]
        if not any(b.endswith("Module") for b in bases):
            continue
        layers = _init_calls(node.raw)
        dense = sum(1 for name in layers if name in _DENSE_LAYERS)
        if dense >= 2 and not any(name.startswith("BatchNorm") for name in layers):
            yield header_span(node), f"class {node.raw.name} has {dense} layers and no BatchNorm"


@rule(
    "PT05",
    "Missing Forward Docstring",
    "A forward() method has no docstring.",
    "Document the expected input shapes and the output of forward().",
    smell="Missing docstring for function: forward",
)
def forward_docstring(ctx: RuleMatchContext) -> Iterator[Match]:
    for node in ctx.tree.nodes_of(NodeKind.FUNCTION_DEF):
        if node.payload["name"] == "forward" and not node.payload["has_docstring"]:
            yield header_span(node), "Missing docstring for function: forward"


# -- tensorflow -------------------------------------------------------------


def _is_keras_model_ctor(ctx: RuleMatchContext, call) -> bool:
    callee = ctx.callee(call) or ""
    if callee.rsplit(".", 1)[-1] in _KERAS_MODELS:
        return True
    qualified = ctx.qualified(call) or ""
    return ".keras.models." in f".{qualified}"


@rule(
    "TF01",
    "Memory Release Checker",
    "Keras models are built inside a loop without clearing the backend session.",
    "Call tf.keras.backend.clear_session() between model constructions.",
)
def memory_release(ctx: RuleMatchContext) -> Iterator[Match]:
    if any(ctx.short_name(c) == "clear_session" for c in ctx.calls):
        return
    for call in ctx.calls:
        if _is_keras_model_ctor(ctx, call) and ctx.in_loop(call):
            yield call, f"{ctx.callee(call)} constructed in a loop without clear_session()"


def _has_tf_logging(ctx: RuleMatchContext) -> bool:
    for call in ctx.calls:
        if ctx.short_name(call) == "TensorBoard":
            return True
        qualified = ctx.qualified(call) or ""
        if qualified.startswith(("tensorflow.summary.", "tensorflow.compat.v1.summary.")):
            return True
    return False


@rule(
    "TF02",
    "Logging Checker",
    "A model is trained with .fit() without TensorBoard callbacks or tf.summary logging.",
    "Pass a tf.keras.callbacks.TensorBoard callback or log with tf.summary.",
)
def logging_checker(ctx: RuleMatchContext) -> Iterator[Match]:
    if _has_tf_logging(ctx):
        return
    for call in ctx.method_calls("fit"):
        yield call, ".fit() without training logs"


@rule(
    "TF03",
    "Data Augmentation Checker",
    "ImageDataGenerator is constructed without any augmentation settings.",
    "Configure augmentation (rotation_range, zoom_range, horizontal_flip, ...).",
)
def data_augmentation(ctx: RuleMatchContext) -> Iterator[Match]:
    for call in ctx.calls:
        callee = ctx.callee(call) or ""
        if callee.rsplit(".", 1)[-1] == "ImageDataGenerator" and not call.raw.keywords:
            yield call, "ImageDataGenerator() without augmentation arguments"


@rule(
    "TF04",
    "Model Evaluation Checker",
    "A model is trained with .fit() but never evaluated with .evaluate().",
    "Evaluate on held-out data with model.evaluate(...).",
)
def keras_model_evaluation(ctx: RuleMatchContext) -> Iterator[Match]:
    if any(True for _ in ctx.method_calls("evaluate")):
        return
    for call in ctx.method_calls("fit"):
        yield call, ".fit() without a matching .evaluate()"


def detect_pytorch(ctx: RuleMatchContext) -> list[Finding]:
    return run_framework(ctx, Framework.PYTORCH)


def detect_tensorflow(ctx: RuleMatchContext) -> list[Finding]:
    return run_framework(ctx, Framework.TENSORFLOW)
