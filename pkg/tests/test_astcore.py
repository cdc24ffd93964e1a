import ast
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import src, tree_of
from mlsniff.astcore import (
    FileError,
    NodeKind,
    ParseError,
    SourceFile,
    Span,
    ValueKind,
    collect_imports,
    infer_value_kinds,
    is_within_loop,
    parse_source,
    read_source,
)
from mlsniff.suite import FIXTURE_ROOT

EXPR_KINDS = {NodeKind.CALL, NodeKind.SUBSCRIPT, NodeKind.ATTRIBUTE, NodeKind.NAME,
              NodeKind.CONSTANT, NodeKind.BIN_OP}
FIXTURE_FILES = sorted(FIXTURE_ROOT.rglob("*.py"))


def bindings_for(text):
    tree = tree_of(text)
    return tree, infer_value_kinds(tree, collect_imports(tree))


def test_minimal_program_has_one_assign_on_line_1():
    tree = tree_of("x = 1\n")
    assigns = list(tree.nodes_of(NodeKind.ASSIGN))
    assert len(assigns) == 1
    assert assigns[0].span.line == 1
    assert tree.root.kind is NodeKind.MODULE


def test_chain_subscript_shape():
    tree = tree_of("df['column']['row']\n")
    expr = tree.root.children[0]
    assert expr.kind is NodeKind.EXPR
    outer = expr.children[0]
    assert outer.kind is NodeKind.SUBSCRIPT
    assert outer.children[0].kind is NodeKind.SUBSCRIPT
    assert tree.segment(outer.children[0].span) == "df['column']"


def test_syntax_error_is_a_value_with_line():
    with pytest.raises(ParseError) as info:
        parse_source(src("def f(:\n", "bad.py"))
    assert info.value.line == 1
    assert info.value.path == "bad.py"


def test_null_byte_is_a_parse_error_not_a_crash():
    with pytest.raises(ParseError):
        parse_source(SourceFile("n.py", "x = 1\x00\n"))


def test_deeply_nested_source_never_crashes():
    text = "x = " + "(" * 400 + "1" + ")" * 400 + "\n"
    try:
        tree = parse_source(SourceFile("deep.py", text))
    except ParseError:
        return
    assert len(tree) > 0


def test_long_operator_chain_is_parsed_iteratively():
    text = "y = " + " + ".join(["a"] * 3000) + "\n"
    tree = parse_source(SourceFile("chain.py", text))
    assert sum(1 for _ in tree.nodes_of(NodeKind.BIN_OP)) == 2999


def test_call_exposes_keyword_names():
    tree = tree_of("f(1, a=2, b=3)\n")
    call = next(tree.nodes_of(NodeKind.CALL))
    assert call.payload["keywords"] == frozenset({"a", "b"})
    assert call.payload["callee"] == "f"
    assert call.payload["n_args"] == 1


def test_function_payload_records_docstring():
    tree = tree_of('def f():\n    """doc"""\n\ndef g():\n    return 1\n')
    flags = {n.payload["name"]: n.payload["has_docstring"] for n in tree.nodes_of(NodeKind.FUNCTION_DEF)}
    assert flags == {"f": True, "g": False}


def test_columns_are_characters_not_bytes():
    tree = tree_of("s = 'é' + df['a']['b']\n")
    sub = next(tree.nodes_of(NodeKind.SUBSCRIPT))
    assert sub.span.column == 10
    assert tree.segment(sub.span) == "df['a']['b']"


def test_source_file_line_count():
    assert SourceFile("a.py", "").line_count == 0
    assert SourceFile("a.py", "x\n").line_count == 1
    assert SourceFile("a.py", "x\ny").line_count == 2
    with pytest.raises(ValueError):
        SourceFile("", "x")


def test_from_bytes_strips_bom_and_replaces_invalid_utf8():
    f = SourceFile.from_bytes("b.py", b"\xef\xbb\xbfx = '\xff'\n")
    assert f.text == "x = '\ufffd'\n"
    parse_source(f)


def test_read_source_missing_file(tmp_path):
    with pytest.raises(FileError):
        read_source(tmp_path / "nope.py")


def test_span_rejects_inversion():
    Span(1, 4, 1, 4)
    with pytest.raises(ValueError):
        Span(2, 0, 1, 5)
    with pytest.raises(ValueError):
        Span(1, 5, 1, 4)


@pytest.mark.parametrize("text, expected", [
    ("import pandas as pd\n", {"pd": "pandas"}),
    ("from sklearn.model_selection import train_test_split\n",
     {"train_test_split": "sklearn.model_selection.train_test_split"}),
    ("", {}),
    ("import os.path\n", {"os": "os"}),
    ("import numpy as np\nimport torch as np\n", {"np": "torch"}),
])
def test_collect_imports(text, expected):
    assert dict(collect_imports(tree_of(text)).entries) == expected


def test_import_table_qualifies_and_reports_roots():
    table = collect_imports(tree_of("import tensorflow.keras as K\nfrom torch import nn\n"))
    assert table.qualify("K.layers.Dense") == "tensorflow.keras.layers.Dense"
    assert table.qualify("nn.Linear") == "torch.nn.Linear"
    assert table.resolve("missing") is None
    assert table.roots() == {"tensorflow", "torch"}


def test_relative_imports_never_count_as_frameworks():
    table = collect_imports(tree_of("from .pandas import thing\n"))
    assert "pandas" not in table.roots()


@pytest.mark.parametrize("text, name, kind", [
    ("import pandas as pd\ndf = pd.read_csv('a.csv')\n", "df", ValueKind.DATAFRAME),
    ("x = foo()\n", "x", ValueKind.UNKNOWN),
    ("import numpy as np\na = np.zeros((3,3))\n", "a", ValueKind.ARRAY),
    ("from transformers import AutoTokenizer\nt = AutoTokenizer.from_pretrained('x')\n", "t",
     ValueKind.TOKENIZER),
    ("from transformers import AutoModel\nm = AutoModel.from_pretrained('x')\n", "m", ValueKind.MODEL),
    ("import torch.nn as nn\nclass Net(nn.Module):\n    pass\nnet = Net()\n", "net", ValueKind.MODEL),
    ("from tensorflow import keras\nm = keras.Sequential()\n", "m", ValueKind.MODEL),
    ("import pandas as pd\na, b = pd.read_csv('x'), 1\n", "a", ValueKind.UNKNOWN),
])
def test_infer_value_kinds(text, name, kind):
    tree, table = bindings_for(text)
    assert table.lookup(tree.root, name) is kind


def test_last_preceding_assignment_wins():
    text = "import pandas as pd\ndf = pd.read_csv('a')\nuse1 = df\ndf = 3\nuse2 = df\n"
    tree, table = bindings_for(text)
    uses = [n for n in tree.nodes_of(NodeKind.NAME) if n.payload["identifier"] == "df"
            and n.span.column > 0]
    assert [table.lookup(tree.root, "df", u.span.start) for u in uses] == [
        ValueKind.DATAFRAME, ValueKind.UNKNOWN]


def test_function_scope_is_separate_from_module_scope():
    text = "import pandas as pd\ndef f():\n    df = pd.read_csv('a')\n    return df\n"
    tree, table = bindings_for(text)
    fn = next(tree.nodes_of(NodeKind.FUNCTION_DEF))
    assert table.lookup(fn, "df") is ValueKind.DATAFRAME
    assert table.lookup(tree.root, "df") is ValueKind.UNKNOWN


def _call_named(tree, name):
    return next(n for n in tree.nodes_of(NodeKind.CALL) if n.payload["callee"] == name)


def test_is_within_loop_examples():
    tree = tree_of("for i in r:\n    f()\ng()\nwhile x:\n    def inner():\n        h()\n")
    assert is_within_loop(tree, _call_named(tree, "f"))
    assert not is_within_loop(tree, _call_named(tree, "g"))
    # function defined inside a loop body: the ancestor chain still reaches the While
    assert is_within_loop(tree, _call_named(tree, "h"))


# generated expressions for the structural properties

_names = st.sampled_from(["a", "df", "np", "x1", "model"])
_atoms = st.one_of(_names, st.integers(0, 999).map(str), st.sampled_from(["'s'", "2.5", "None"]))


def _extend(children):
    return st.one_of(
        st.tuples(children, st.sampled_from(["+", "-", "*", "/", "%", "@"]), children)
          .map(lambda t: f"({t[0]} {t[1]} {t[2]})"),
        st.tuples(children, _names).map(lambda t: f"({t[0]}).{t[1]}"),
        st.tuples(children, children).map(lambda t: f"({t[0]})[{t[1]}]"),
        st.tuples(_names, st.lists(children, max_size=3), st.lists(st.tuples(_names, children), max_size=2))
          .map(lambda t: f"{t[0]}({', '.join(t[1] + [f'{k}={v}' for k, v in dict(t[2]).items()])})"),
    )


expressions = st.recursive(_atoms, _extend, max_leaves=12)
programs = st.lists(expressions, min_size=1, max_size=4).map(
    lambda exprs: "".join(f"v{i} = {e}\n" if i % 2 else f"{e}\n" for i, e in enumerate(exprs)))


def _expression_shape(text):
    wrapped = parse_source(SourceFile("seg.py", "(\n" + text + "\n)\n"))
    return wrapped.root.children[0].children[0].shape()


def _check_round_trip(tree):
    for node in tree.walk():
        if node.kind in EXPR_KINDS:
            assert _expression_shape(tree.segment(node.span)) == node.shape(), node


def _check_containment(tree):
    for node in tree.walk():
        for child in node.children:
            assert node.span.contains(child.span)


@settings(max_examples=150, deadline=None)
@given(programs)
def test_span_round_trip_on_generated_expressions(text):
    _check_round_trip(parse_source(SourceFile("g.py", text)))


@settings(max_examples=150, deadline=None)
@given(programs)
def test_children_are_contained_and_parse_is_deterministic(text):
    first = parse_source(SourceFile("g.py", text))
    second = parse_source(SourceFile("g.py", text))
    _check_containment(first)
    assert first.root.shape(with_spans=True) == second.root.shape(with_spans=True)


@settings(max_examples=100, deadline=None)
@given(programs)
def test_traversal_visits_each_node_once_in_source_order(text):
    tree = parse_source(SourceFile("g.py", text))
    visited = list(tree.walk())
    assert len({id(n) for n in visited}) == len(visited) == len(tree) == len(list(tree.walk()))
    starts = [n.span.start for n in visited]
    assert starts == sorted(starts)


@pytest.mark.parametrize("path", FIXTURE_FILES, ids=lambda p: p.relative_to(FIXTURE_ROOT).as_posix())
def test_structural_properties_hold_on_fixture_files(path: Path):
    tree = parse_source(read_source(path))
    _check_round_trip(tree)
    _check_containment(tree)


@settings(max_examples=200, deadline=None)
@given(st.text(max_size=60))
def test_analysis_primitives_are_total_on_arbitrary_text(text):
    try:
        tree = parse_source(SourceFile("any.py", text))
    except ParseError:
        return
    infer_value_kinds(tree, collect_imports(tree))
    for node in tree.walk():
        is_within_loop(tree, node)
