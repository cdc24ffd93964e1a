"""Parsing, traversal and lightweight inference over Python syntax trees.

The stdlib :mod:`ast` does the actual parsing.  This module normalizes the
result into an immutable :class:`Node` tree with character-based spans,
source-ordered children and a small kind vocabulary that detectors match on.
"""

from __future__ import annotations

import ast
import enum
import re
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Any, Iterator, Mapping

__all__ = [
    "SourceFile",
    "Span",
    "NodeKind",
    "Node",
    "SyntaxTree",
    "ParseError",
    "FileError",
    "ImportTable",
    "ValueKind",
    "BindingTable",
    "read_source",
    "parse_source",
    "collect_imports",
    "infer_value_kinds",
    "is_within_loop",
    "dotted_name",
    "has_docstring",
]

_NEWLINE = re.compile(r"\r\n|\r|\n")


@dataclass(frozen=True)
class SourceFile:
    path: str
    text: str

    def __post_init__(self) -> None:
        if not self.path:
            raise ValueError("SourceFile.path must be non-empty")

    @property
    def line_count(self) -> int:
        text = self.text
        if not text:
            return 0
        return text.count("\n") + (0 if text.endswith("\n") else 1)

    @classmethod
    def from_bytes(cls, path: str | Path, data: bytes) -> "SourceFile":
        # utf-8-sig drops a leading BOM, which ast.parse rejects on str input
        return cls(str(path), data.decode("utf-8-sig", errors="replace"))


class FileError(Exception):
    """A source file could not be read."""

    def __init__(self, path: str, message: str) -> None:
        super().__init__(path, message)
        self.path = path
        self.message = message

    def __str__(self) -> str:
        return f"{self.path}: {self.message}"


class ParseError(Exception):
    """Source text is not valid Python."""

    def __init__(self, path: str, line: int, message: str) -> None:
        super().__init__(path, line, message)
        self.path = path
        self.line = line
        self.message = message

    def __str__(self) -> str:
        return f"{self.path}:{self.line}: {self.message}"

    def __eq__(self, other: object) -> bool:
        return isinstance(other, ParseError) and self.args == other.args

    def __hash__(self) -> int:
        return hash(self.args)


def read_source(path: str | Path) -> SourceFile:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise FileError(str(path), exc.strerror or str(exc)) from exc
    return SourceFile.from_bytes(path, data)


@dataclass(frozen=True, order=True)
class Span:
    line: int
    column: int
    end_line: int
    end_column: int

    def __post_init__(self) -> None:
        if self.line > self.end_line or (
            self.line == self.end_line and self.column > self.end_column
        ):
            raise ValueError(f"inverted span {self!r}")

    @property
    def start(self) -> tuple[int, int]:
        return (self.line, self.column)

    @property
    def end(self) -> tuple[int, int]:
        return (self.end_line, self.end_column)

    def contains(self, other: "Span") -> bool:
        return self.start <= other.start and other.end <= self.end


class NodeKind(enum.Enum):
    MODULE = "Module"
    IMPORT = "Import"
    IMPORT_FROM = "ImportFrom"
    FUNCTION_DEF = "FunctionDef"
    CLASS_DEF = "ClassDef"
    ASSIGN = "Assign"
    FOR = "For"
    WHILE = "While"
    WITH = "With"
    CALL = "Call"
    SUBSCRIPT = "Subscript"
    ATTRIBUTE = "Attribute"
    NAME = "Name"
    CONSTANT = "Constant"
    KEYWORD = "Keyword"
    BIN_OP = "BinOp"
    EXPR = "Expr"
    RETURN = "Return"
    OTHER = "other"


_KIND_OF: dict[type, NodeKind] = {
    ast.Module: NodeKind.MODULE,
    ast.Import: NodeKind.IMPORT,
    ast.ImportFrom: NodeKind.IMPORT_FROM,
    ast.FunctionDef: NodeKind.FUNCTION_DEF,
    ast.AsyncFunctionDef: NodeKind.FUNCTION_DEF,
    ast.ClassDef: NodeKind.CLASS_DEF,
    ast.Assign: NodeKind.ASSIGN,
    ast.For: NodeKind.FOR,
    ast.AsyncFor: NodeKind.FOR,
    ast.While: NodeKind.WHILE,
    ast.With: NodeKind.WITH,
    ast.AsyncWith: NodeKind.WITH,
    ast.Call: NodeKind.CALL,
    ast.Subscript: NodeKind.SUBSCRIPT,
    ast.Attribute: NodeKind.ATTRIBUTE,
    ast.Name: NodeKind.NAME,
    ast.Constant: NodeKind.CONSTANT,
    ast.keyword: NodeKind.KEYWORD,
    ast.BinOp: NodeKind.BIN_OP,
    ast.Expr: NodeKind.EXPR,
    ast.Return: NodeKind.RETURN,
}

# Contexts and operators carry no position and no information detectors use.
_SKIPPED = (ast.expr_context, ast.operator, ast.unaryop, ast.cmpop, ast.boolop)

_EMPTY: Mapping[str, Any] = MappingProxyType({})


@dataclass(frozen=True, eq=False)
class Node:
    """One normalized syntax node.

    ``raw`` is the underlying :mod:`ast` node, kept for detectors that need
    fields the payload does not carry.  Nodes compare by identity; use
    :meth:`shape` for structural comparison.
    """

    kind: NodeKind
    span: Span
    children: tuple["Node", ...]
    payload: Mapping[str, Any] = field(default=_EMPTY)
    raw: ast.AST | None = field(default=None, repr=False)

    @property
    def line(self) -> int:
        return self.span.line

    def shape(self, with_spans: bool = False) -> tuple:
        """Structural fingerprint of the subtree rooted here."""
        out: list[tuple] = []
        # post-order, iterative: deeply nested expressions exceed the recursion limit
        stack: list[tuple[Node, bool]] = [(self, False)]
        while stack:
            node, done = stack.pop()
            if not done:
                stack.append((node, True))
                for child in reversed(node.children):
                    stack.append((child, False))
                continue
            n = len(node.children)
            kids = tuple(out[len(out) - n:]) if n else ()
            if n:
                del out[len(out) - n:]
            items = tuple(sorted((k, _hashable(v)) for k, v in node.payload.items()))
            head = (node.kind.value, items)
            if with_spans:
                head += (node.span,)
            out.append(head + (kids,))
        return out[0]


def _hashable(value: Any) -> Any:
    if isinstance(value, (frozenset, set)):
        return tuple(sorted(value))
    if isinstance(value, (bool, int, float, complex, bytes, str)) or value is None or value is Ellipsis:
        # 1 == 1.0 == True must stay distinguishable
        return (type(value).__name__, repr(value))
    return value


class SyntaxTree:
    """Immutable normalized tree for one source file."""

    __slots__ = ("root", "source", "_order", "_parent", "_by_raw", "_lines")

    def __init__(self, root: Node, source: SourceFile) -> None:
        if root.kind is not NodeKind.MODULE:
            raise ValueError("root must be a Module node")
        self.root = root
        self.source = source
        order: list[Node] = []
        parent: dict[int, Node] = {}
        stack = [root]
        while stack:
            node = stack.pop()
            order.append(node)
            for child in reversed(node.children):
                parent[id(child)] = node
                stack.append(child)
        self._order = tuple(order)
        self._parent = parent
        self._by_raw = {id(n.raw): n for n in order if n.raw is not None}
        self._lines = _NEWLINE.split(source.text)

    def walk(self) -> Iterator[Node]:
        """Pre-order traversal; equivalent to source order."""
        return iter(self._order)

    def __len__(self) -> int:
        return len(self._order)

    def nodes_of(self, *kinds: NodeKind) -> Iterator[Node]:
        return (n for n in self._order if n.kind in kinds)

    def parent(self, node: Node) -> Node | None:
        return self._parent.get(id(node))

    def ancestors(self, node: Node) -> Iterator[Node]:
        current = self._parent.get(id(node))
        while current is not None:
            yield current
            current = self._parent.get(id(current))

    def node_for(self, raw: ast.AST) -> Node | None:
        return self._by_raw.get(id(raw))

    def scope_of(self, node: Node) -> Node:
        """Nearest enclosing function definition, or the module root."""
        for anc in self.ancestors(node):
            if anc.kind is NodeKind.FUNCTION_DEF:
                return anc
        return self.root

    def segment(self, span: Span) -> str:
        lines = self._lines
        if span.line == span.end_line:
            return lines[span.line - 1][span.column:span.end_column]
        parts = [lines[span.line - 1][span.column:]]
        parts.extend(lines[span.line:span.end_line - 1])
        parts.append(lines[span.end_line - 1][:span.end_column])
        return "\n".join(parts)


def dotted_name(expr: ast.AST | None) -> str | None:
    """``a.b.c`` for Name/Attribute chains, else None."""
    parts: list[str] = []
    while isinstance(expr, ast.Attribute):
        parts.append(expr.attr)
        expr = expr.value
    if not isinstance(expr, ast.Name):
        return None
    parts.append(expr.id)
    return ".".join(reversed(parts))


def has_docstring(func: ast.AST) -> bool:
    body = getattr(func, "body", None)
    if not body:
        return False
    first = body[0]
    return (
        isinstance(first, ast.Expr)
        and isinstance(first.value, ast.Constant)
        and isinstance(first.value.value, str)
    )


def _payload(raw: ast.AST) -> Mapping[str, Any]:
    if isinstance(raw, ast.Name):
        data: dict[str, Any] = {"identifier": raw.id}
    elif isinstance(raw, ast.Constant):
        data = {"value": raw.value}
    elif isinstance(raw, ast.Attribute):
        data = {"attr": raw.attr}
    elif isinstance(raw, ast.Call):
        data = {
            "callee": dotted_name(raw.func),
            "keywords": frozenset(k.arg for k in raw.keywords if k.arg is not None),
            "kwargs_splat": any(k.arg is None for k in raw.keywords),
            "n_args": len(raw.args),
        }
    elif isinstance(raw, ast.keyword):
        data = {"name": raw.arg}
    elif isinstance(raw, (ast.FunctionDef, ast.AsyncFunctionDef)):
        data = {
            "name": raw.name,
            "has_docstring": has_docstring(raw),
            "is_async": isinstance(raw, ast.AsyncFunctionDef),
        }
    elif isinstance(raw, ast.ClassDef):
        data = {"name": raw.name, "bases": tuple(dotted_name(b) for b in raw.bases)}
    elif isinstance(raw, ast.Import):
        data = {"names": tuple((a.name, a.asname) for a in raw.names)}
    elif isinstance(raw, ast.ImportFrom):
        data = {
            "module": raw.module,
            "level": raw.level,
            "names": tuple((a.name, a.asname) for a in raw.names),
        }
    elif isinstance(raw, ast.Assign):
        data = {
            "targets": tuple(t.id if isinstance(t, ast.Name) else None for t in raw.targets)
        }
    elif isinstance(raw, ast.BinOp):
        data = {"op": type(raw.op).__name__}
    elif type(raw) in _KIND_OF:
        return _EMPTY
    else:
        data = {"type": type(raw).__name__}
        op = getattr(raw, "op", None)
        if op is not None:
            data["op"] = type(op).__name__
    return MappingProxyType(data)


def _child_asts(raw: ast.AST) -> list[ast.AST]:
    out: list[ast.AST] = []
    pending = list(ast.iter_child_nodes(raw))
    pending.reverse()
    while pending:
        child = pending.pop()
        if isinstance(child, _SKIPPED):
            continue
        if not hasattr(child, "lineno"):
            # position-less wrappers (arguments, comprehension, withitem, ...)
            # contribute their children directly
            grand = list(ast.iter_child_nodes(child))
            grand.reverse()
            pending.extend(grand)
            continue
        out.append(child)
    out.sort(key=lambda c: (c.lineno, c.col_offset))
    return out


class _Columns:
    """Converts UTF-8 byte offsets reported by :mod:`ast` to character offsets."""

    def __init__(self, text: str) -> None:
        self.lines = _NEWLINE.split(text)
        self._ascii = [line.isascii() for line in self.lines]

    def __call__(self, line: int, byte_col: int) -> int:
        idx = line - 1
        if idx >= len(self.lines) or self._ascii[idx]:
            return byte_col
        encoded = self.lines[idx].encode("utf-8")
        return len(encoded[:byte_col].decode("utf-8", errors="replace"))


def _build(module: ast.Module, source: SourceFile) -> Node:
    cols = _Columns(source.text)
    built: dict[int, Node] = {}
    stack: list[tuple[ast.AST, list[ast.AST] | None]] = [(module, None)]
    while stack:
        raw, kids = stack.pop()
        if kids is None:
            kids = _child_asts(raw)
            stack.append((raw, kids))
            for child in reversed(kids):
                stack.append((child, None))
            continue
        children = tuple(built.pop(id(c)) for c in kids)
        if isinstance(raw, ast.Module):
            if children:
                last = max(children, key=lambda c: c.span.end)
                span = Span(1, 0, last.span.end_line, last.span.end_column)
            else:
                span = Span(1, 0, 1, 0)
        else:
            start = (raw.lineno, cols(raw.lineno, raw.col_offset))
            end_line = getattr(raw, "end_lineno", None) or raw.lineno
            end_col = getattr(raw, "end_col_offset", None)
            end = (end_line, cols(end_line, end_col)) if end_col is not None else start
            for child in children:
                start = min(start, child.span.start)
                end = max(end, child.span.end)
            span = Span(start[0], start[1], end[0], end[1])
        kind = _KIND_OF.get(type(raw), NodeKind.OTHER)
        built[id(raw)] = Node(kind, span, children, _payload(raw), raw)
    return built[id(module)]


def parse_source(file: SourceFile) -> SyntaxTree:
    """Parse ``file`` into a :class:`SyntaxTree`.

    Raises :class:`ParseError` when the text is not valid Python.
    """
    try:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore")
            module = ast.parse(file.text, filename=file.path)
    except SyntaxError as exc:
        raise ParseError(file.path, exc.lineno or 1, exc.msg or "invalid syntax") from None
    except (ValueError, RecursionError, MemoryError) as exc:
        raise ParseError(file.path, 1, str(exc) or type(exc).__name__) from None
    return SyntaxTree(_build(module, file), file)


@dataclass(frozen=True)
class ImportTable:
    """Local alias -> fully qualified module or symbol path."""

    entries: Mapping[str, str] = field(default_factory=dict)
    star_modules: tuple[str, ...] = ()

    def resolve(self, alias: str) -> str | None:
        return self.entries.get(alias)

    def qualify(self, dotted: str | None) -> str | None:
        """Resolve the head of a dotted name through the table."""
        if not dotted:
            return None
        head, _, rest = dotted.partition(".")
        target = self.entries.get(head)
        if target is None:
            return None
        return f"{target}.{rest}" if rest else target

    def modules(self) -> set[str]:
        return set(self.entries.values()) | set(self.star_modules)

    def roots(self) -> set[str]:
        return {m.split(".", 1)[0] for m in self.modules() if m and not m.startswith(".")}


def collect_imports(tree: SyntaxTree) -> ImportTable:
    entries: dict[str, str] = {}
    stars: list[str] = []
    for node in tree.nodes_of(NodeKind.IMPORT, NodeKind.IMPORT_FROM):
        raw = node.raw
        if isinstance(raw, ast.Import):
            for alias in raw.names:
                if alias.asname:
                    entries[alias.asname] = alias.name
                else:
                    head = alias.name.split(".", 1)[0]
                    entries[head] = head
        else:
            assert isinstance(raw, ast.ImportFrom)
            base = "." * raw.level + (raw.module or "")
            for alias in raw.names:
                if alias.name == "*":
                    stars.append(base)
                    continue
                sep = "" if base.endswith(".") else "."
                entries[alias.asname or alias.name] = f"{base}{sep}{alias.name}"
    return ImportTable(MappingProxyType(entries), tuple(stars))


class ValueKind(enum.Enum):
    DATAFRAME = "DataFrameLike"
    ARRAY = "ArrayLike"
    MODEL = "ModelLike"
    TOKENIZER = "TokenizerLike"
    UNKNOWN = "Unknown"


_ARRAY_CTORS = frozenset(
    f"numpy.{n}" for n in ("array", "zeros", "ones", "asarray", "arange")
)
_KERAS_MODELS = frozenset({"Sequential", "Model"})


@dataclass(frozen=True)
class _Binding:
    end: tuple[int, int]
    kind: ValueKind


@dataclass(frozen=True)
class BindingTable:
    """Per-scope assignment history, queried at a use site.

    Scopes are keyed by the id of the module root or function-definition node.
    """

    bindings: Mapping[tuple[int, str], tuple[_Binding, ...]] = field(default_factory=dict)

    def lookup(self, scope: Node, name: str, at: tuple[int, int] | None = None) -> ValueKind:
        history = self.bindings.get((id(scope), name), ())
        kind = ValueKind.UNKNOWN
        for binding in history:
            if at is not None and binding.end > at:
                break
            kind = binding.kind
        return kind

    def names_of(self, scope: Node, kind: ValueKind) -> set[str]:
        return {
            name
            for (sid, name), history in self.bindings.items()
            if sid == id(scope) and any(b.kind is kind for b in history)
        }


def _module_classes(tree: SyntaxTree, imports: ImportTable) -> set[str]:
    """Names of classes in this file deriving from torch.nn.Module."""
    found = set()
    for node in tree.nodes_of(NodeKind.CLASS_DEF):
        for base in node.raw.bases:
            name = dotted_name(base)
            qualified = imports.qualify(name)
            if qualified == "torch.nn.Module" or (name or "").endswith("nn.Module"):
                found.add(node.raw.name)
    return found


def _call_kind(value: ast.AST, imports: ImportTable, torch_models: set[str]) -> ValueKind:
    if not isinstance(value, ast.Call):
        return ValueKind.UNKNOWN
    callee = dotted_name(value.func)
    qualified = imports.qualify(callee) or ""
    if qualified.startswith("pandas.read_") or qualified == "pandas.DataFrame":
        return ValueKind.DATAFRAME
    if qualified in _ARRAY_CTORS:
        return ValueKind.ARRAY
    if isinstance(value.func, ast.Attribute) and value.func.attr == "from_pretrained":
        receiver = dotted_name(value.func.value) or ""
        return ValueKind.TOKENIZER if "Tokenizer" in receiver else ValueKind.MODEL
    if callee in torch_models:
        return ValueKind.MODEL
    last = qualified.rsplit(".", 1)[-1]
    if "keras" in qualified.split(".") and (
        last in _KERAS_MODELS or ".keras.applications." in f".{qualified}"
    ):
        return ValueKind.MODEL
    return ValueKind.UNKNOWN


def _target_names(target: ast.AST) -> list[str]:
    if isinstance(target, ast.Name):
        return [target.id]
    if isinstance(target, (ast.Tuple, ast.List)):
        return [n for elt in target.elts for n in _target_names(elt)]
    if isinstance(target, ast.Starred):
        return _target_names(target.value)
    return []


def infer_value_kinds(tree: SyntaxTree, imports: ImportTable) -> BindingTable:
    torch_models = _module_classes(tree, imports)
    table: dict[tuple[int, str], list[_Binding]] = {}
    for node in tree.walk():
        raw = node.raw
        if isinstance(raw, ast.Assign):
            targets, value = raw.targets, raw.value
        elif isinstance(raw, ast.AnnAssign) and raw.value is not None:
            targets, value = [raw.target], raw.value
        else:
            continue
        scope = tree.scope_of(node)
        for target in targets:
            simple = isinstance(target, ast.Name)
            kind = _call_kind(value, imports, torch_models) if simple else ValueKind.UNKNOWN
            for name in _target_names(target):
                table.setdefault((id(scope), name), []).append(_Binding(node.span.end, kind))
    return BindingTable(MappingProxyType({k: tuple(v) for k, v in table.items()}))


def is_within_loop(tree: SyntaxTree, node: Node) -> bool:
    return any(a.kind in (NodeKind.FOR, NodeKind.WHILE) for a in tree.ancestors(node))
