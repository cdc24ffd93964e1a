import ast

from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import ctx_of, findings, hits, lines_for
from mlsniff.detectors import detect_numpy, detect_pandas

PD = "import pandas as pd\n"
NP = "import numpy as np\n"


def test_chain_indexing_example():
    assert lines_for(PD + "df['column']['row']\n", "PD01") == [2]


def test_dtype_keyword_silences_pd04():
    assert lines_for(PD + "df = pd.read_csv('a.csv', dtype={'x': 'int64'})\n", "PD04") == []


def test_values_on_dataframe_binding():
    text = PD + "df = pd.read_csv('a.csv')\nv = df.values\n"
    assert lines_for(text, "PD03") == [3]


def test_values_on_unknown_binding_is_ignored():
    assert lines_for(PD + "v = obj.values\n", "PD03") == []


def test_unselected_read_gets_pd02_and_pd04():
    found = hits(PD + "df = pd.read_csv('a.csv')\n")
    assert ("PD02", 2) in found and ("PD04", 2) in found


def test_list_selection_in_same_scope_satisfies_pd02():
    text = PD + "df = pd.read_csv('a.csv')\ncols = df[['a', 'b']]\n"
    assert lines_for(text, "PD02") == []


def test_list_selection_in_another_scope_does_not_count():
    text = PD + "df = pd.read_csv('a.csv')\ndef f():\n    return df[['a']]\n"
    assert lines_for(text, "PD02") == [2]


def test_pd04_covers_table_and_excel_readers_only():
    text = PD + "a = pd.read_table('t')\nb = pd.read_excel('x')\nc = pd.read_parquet('p')\n"
    assert lines_for(text, "PD04") == [2, 3]


def test_append_in_loop():
    text = NP + "a = np.zeros(0)\nfor i in r:\n    a = np.append(a, i)\n"
    assert lines_for(text, "NP01") == [4]
    assert lines_for(NP + "a = np.append(a, 1)\n", "NP01") == []


def test_axis_keyword_dichotomy():
    assert lines_for(NP + "np.sum(m)\n", "NP02") == [2]
    assert lines_for(NP + "np.sum(m, axis=0)\n", "NP02") == []


def test_unseeded_numpy_random():
    assert lines_for(NP + "np.random.rand(3)\n", "NP03") == [2]


def test_default_rng_without_seed_does_not_count_as_seeding():
    text = NP + "rng = np.random.default_rng()\nx = np.random.rand(3)\n"
    assert lines_for(text, "NP03") == [2, 3]


def test_broadcast_rank_mismatch():
    assert lines_for(NP + "np.zeros((3,1)) + np.zeros((3,))\n", "NP04") == [2]
    assert lines_for(NP + "np.zeros((3,1)) + np.zeros((4,1))\n", "NP04") == []
    assert lines_for(NP + "np.zeros((3,1)) + np.zeros(shape)\n", "NP04") == []


def test_pack_entry_points_match_the_registry():
    ctx = ctx_of(PD + NP + "df = pd.read_csv('a')\nv = df['a']['b']\nnp.sum(v)\n")
    assert {f.detector_id for f in detect_pandas(ctx)} == {"PD01", "PD02", "PD04"}
    assert {f.detector_id for f in detect_numpy(ctx)} == {"NP02"}


# PD01 against a direct transcription of the nested-subscript pseudocode

def oracle_chain_spans(text):
    tree = ast.parse(text)
    imports_pandas = any(
        (isinstance(n, ast.Import) and any(a.name.split(".")[0] == "pandas" for a in n.names))
        or (isinstance(n, ast.ImportFrom) and n.level == 0 and (n.module or "").split(".")[0] == "pandas")
        for n in ast.walk(tree))
    if not imports_pandas:
        return set()
    return {(n.lineno, n.col_offset, n.end_lineno, n.end_col_offset)
            for n in ast.walk(tree)
            if isinstance(n, ast.Subscript) and isinstance(n.value, ast.Subscript)}


def pd01_spans(text):
    return {(f.span.line, f.span.column, f.span.end_line, f.span.end_column)
            for f in findings(text) if f.detector_id == "PD01"}


_bases = st.sampled_from(["df", "grid", "frame.loc", "xs", "f(x)"])
_keys = st.sampled_from(["'a'", "0", "1:3", "i", "'col'", "::2"])
_subscripts = st.tuples(_bases, st.lists(_keys, min_size=1, max_size=4)).map(
    lambda t: t[0] + "".join(f"[{k}]" for k in t[1]))
_statement = st.one_of(
    _subscripts.map(lambda e: f"v = {e}"),
    _subscripts.map(lambda e: f"print({e})"),
    st.tuples(_subscripts, _subscripts).map(lambda t: f"w = {t[0]} + {t[1]}"),
    st.just("y = 3"),
)
_header = st.sampled_from(["import pandas as pd\n", "import numpy as np\n", "from pandas import DataFrame\n", ""])


@settings(max_examples=200, deadline=None)
@given(_header, st.lists(_statement, min_size=1, max_size=20))
def test_pd01_matches_oracle(header, statements):
    text = header + "\n".join(statements) + "\n"
    assert pd01_spans(text) == oracle_chain_spans(text)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 6), st.integers(0, 6), st.randoms())
def test_np02_counts_only_axisless_reductions(k, m, rnd):
    calls = [f"np.mean(a{i})" for i in range(k)] + [f"np.max(b{i}, axis=0)" for i in range(m)]
    rnd.shuffle(calls)
    assert len(lines_for(NP + "\n".join(calls) + "\n", "NP02")) == k


@settings(max_examples=60, deadline=None)
@given(st.integers(1, 5), st.integers(0, 6))
def test_np03_single_seed_anywhere_clears_the_file(n, where):
    calls = [f"x{i} = np.random.normal(size=3)" for i in range(n)]
    assert len(lines_for(NP + "\n".join(calls) + "\n", "NP03")) == n
    calls.insert(min(where, len(calls)), "np.random.seed(7)")
    assert lines_for(NP + "\n".join(calls) + "\n", "NP03") == []


_risky = ["df = read_csv('a')", "v = df['a']['b']", "m.values", "sum(x)",
          "for i in r:\n    a = append(a, i)", "random.rand(3)", "zeros((3,1)) + zeros((3,))"]


@settings(max_examples=60, deadline=None)
@given(st.lists(st.sampled_from(_risky), min_size=1), st.sampled_from(["", "import torch\n", "import os\n"]))
def test_data_rules_need_pandas_or_numpy_imports(body, header):
    text = header + "\n".join(body) + "\n"
    assert not [f for f in findings(text) if f.detector_id[:2] in {"PD", "NP"}]
