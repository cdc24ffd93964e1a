"""Shared matching context and helpers for detector rules."""

from __future__ import annotations

import ast
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterator

from mlsniff.model import Finding, Framework
from mlsniff.registry import REGISTRY
from mlsniff.astcore import (
    BindingTable,
    ImportTable,
    Node,
    NodeKind,
    Span,
    SyntaxTree,
    ValueKind,
    collect_imports,
    dotted_name,
    infer_value_kinds,
    is_within_loop,
)


@dataclass
class RuleMatchContext:
    tree: SyntaxTree
    imports: ImportTable
    bindings: BindingTable = field(repr=False)

    @classmethod
    def build(cls, tree: SyntaxTree) -> "RuleMatchContext":
        imports = collect_imports(tree)
        return cls(tree, imports, infer_value_kinds(tree, imports))

    @cached_property
    def calls(self) -> tuple[Node, ...]:
        return tuple(self.tree.nodes_of(NodeKind.CALL))

    @cached_property
    def referenced_names(self) -> frozenset[str]:
        """Name identifiers and attribute names used outside import statements."""
        names = set()
        for node in self.tree.nodes_of(NodeKind.NAME, NodeKind.ATTRIBUTE):
            names.add(node.payload.get("identifier") or node.payload.get("attr"))
        return frozenset(names)

    def callee(self, call: Node) -> str | None:
        return call.payload["callee"]

    def qualified(self, call: Node) -> str | None:
        return self.imports.qualify(call.payload["callee"])

    def short_name(self, call: Node) -> str | None:
        """Last segment of the callee: ``fit`` for ``model.fit``, ``SVC`` for ``SVC``."""
        func = call.raw.func
        if isinstance(func, ast.Attribute):
            return func.attr
        if isinstance(func, ast.Name):
            return func.id
        return None

    def calls_named(self, *names: str) -> Iterator[Node]:
        wanted = set(names)
        return (c for c in self.calls if self.short_name(c) in wanted)

    def method_calls(self, attr: str) -> Iterator[Node]:
        return (
            c for c in self.calls
            if isinstance(c.raw.func, ast.Attribute) and c.raw.func.attr == attr
        )

    def calls_resolving_to(self, *qualified: str) -> Iterator[Node]:
        wanted = set(qualified)
        return (c for c in self.calls if self.qualified(c) in wanted)

    def has_keyword(self, call: Node, name: str) -> bool:
        # a **mapping may supply any keyword, so it counts as present
        return name in call.payload["keywords"] or call.payload["kwargs_splat"]

    def in_loop(self, node: Node) -> bool:
        return is_within_loop(self.tree, node)

    def kind_at(self, name: str, use: Node) -> ValueKind:
        return self.bindings.lookup(self.tree.scope_of(use), name, use.span.start)

    def imports_root(self, root: str) -> bool:
        return root in self.imports.roots()


def numeric_literal(expr: ast.AST) -> int | float | None:
    """Value of an int/float literal, including a unary minus; bools excluded."""
    sign = 1
    if isinstance(expr, ast.UnaryOp) and isinstance(expr.op, (ast.USub, ast.UAdd)):
        sign = -1 if isinstance(expr.op, ast.USub) else 1
        expr = expr.operand
    if isinstance(expr, ast.Constant) and type(expr.value) in (int, float):
        return sign * expr.value
    return None


def names_in(expr: ast.AST) -> set[str]:
    return {n.id for n in ast.walk(expr) if isinstance(n, ast.Name)}


def scope_statements(tree: SyntaxTree, scope: Node) -> Iterator[Node]:
    """Nodes belonging to ``scope`` without entering nested function definitions."""
    stack = list(reversed(scope.children))
    while stack:
        node = stack.pop()
        yield node
        if node.kind is NodeKind.FUNCTION_DEF:
            continue
        stack.extend(reversed(node.children))


def run_framework(ctx: RuleMatchContext, framework: Framework) -> list[Finding]:
    return [f for d in REGISTRY.for_framework(framework) for f in d.run(ctx)]


def header_span(node: Node) -> Span:
    """Span of a def/class starting at its keyword rather than its first decorator."""
    raw = node.raw
    start = (raw.lineno, raw.col_offset)
    if node.span.start >= start:
        return node.span
    # only indentation precedes the keyword, so its byte offset is also its character column
    return Span(raw.lineno, raw.col_offset, node.span.end_line, node.span.end_column)
