from collections import Counter

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mlsniff.astcore import ParseError, Span
from mlsniff.model import FileReport, Finding, Framework
from mlsniff.registry import REGISTRY
from mlsniff.reporting import (
    CSV_HEADER,
    aggregate,
    aggregate_corpus,
    format_finding,
    parse_csv,
    rank_smells,
    read_rows,
    render_corpus_csv,
    render_csv,
    render_text,
)

IDS = sorted(REGISTRY.ids())


def mk(detector_id="PD01", file="a.py", line=1, column=0, message="m", advice=None):
    d = REGISTRY.get(detector_id).descriptor
    return Finding(detector_id, d.name, d.framework, file, Span(line, column, line, column + 1),
                   message, d.advice if advice is None else advice)


def batch_of(*findings):
    by_file = {}
    for f in findings:
        by_file.setdefault(f.file, []).append(f)
    return aggregate(FileReport(path, tuple(sorted(fs, key=Finding.sort_key)))
                     for path, fs in by_file.items())


def test_empty_batch():
    batch = aggregate([])
    assert "0 findings" in render_text(batch)
    assert render_csv(batch) == ",".join(CSV_HEADER) + "\n"


def test_single_chain_indexing_finding():
    f = mk(message="Chain indexing detected: df['a']['b']")
    text = render_text(batch_of(f))
    assert text.count("[PD01]") == 1
    assert "  Pandas: 1\n" in text
    assert format_finding(f) in text.splitlines()
    assert format_finding(f) == ("a.py:1:0 [PD01] Chain Indexing: Chain indexing detected: df['a']['b']"
                                 f" | advice: {f.advice}")


def test_file_sections_follow_path_order():
    a, b = mk(file="b/z.py"), mk(file="a/y.py", detector_id="NP02")
    first = render_text(aggregate([FileReport("b/z.py", (a,)), FileReport("a/y.py", (b,))]))
    second = render_text(aggregate([FileReport("a/y.py", (b,)), FileReport("b/z.py", (a,))]))
    assert first == second
    assert first.index("== a/y.py ==") < first.index("== b/z.py ==")


def test_text_shows_parse_errors_and_clean_files():
    batch = aggregate([FileReport("bad.py", (), ParseError("bad.py", 3, "invalid syntax")),
                       FileReport("ok.py", ())])
    text = render_text(batch)
    assert "bad.py:3: parse error: invalid syntax" in text
    assert "no findings" in text
    assert "2 files analyzed, 0 findings, 1 parse errors" in text


def test_csv_quotes_commas_quotes_and_newlines():
    f = mk(message='a, "b"\nc\rd')
    line = render_csv(batch_of(f)).split("\n", 1)[1]
    assert '"a, ""b""\nc\rd"' in line
    assert parse_csv(render_csv(batch_of(f)))[0].message == 'a, "b"\nc\rd'


def test_read_rows_validates_shape():
    with pytest.raises(ValueError):
        read_rows("wrong,header\n", CSV_HEADER)
    with pytest.raises(ValueError):
        read_rows(",".join(CSV_HEADER) + "\nonly,three,fields\n", CSV_HEADER)
    with pytest.raises(ValueError):
        read_rows("", CSV_HEADER)
    with pytest.raises(ValueError):
        read_rows(",".join(CSV_HEADER) + "\na\x00,b\n", CSV_HEADER)


def test_aggregate_counts_and_ties():
    fs = [mk("NP02", "a.py", i) for i in range(1, 4)] + [mk("PD04", "b.py", i) for i in (1, 2)]
    batch = batch_of(*fs)
    assert batch.totals[Framework.NUMPY] == 3 and batch.totals[Framework.PANDAS] == 2
    assert sum(batch.totals.values()) == 5
    assert rank_smells({"B": 5, "A": 5}) == (("A", 5), ("B", 5))
    assert len(rank_smells({f"s{i}": i for i in range(12)})) == 10


# NUL cannot reach a finding: sources containing it do not parse
_text = st.text(st.characters(blacklist_categories=("Cs",), blacklist_characters="\x00"), max_size=12)
finding_st = st.builds(
    mk,
    detector_id=st.sampled_from(IDS),
    file=st.sampled_from(["a.py", "dir/b.py", "c d,e.py"]),
    line=st.integers(1, 50),
    column=st.integers(0, 30),
    message=_text,
    advice=_text,
)


def _rows(findings):
    return Counter(f.as_row() for f in findings)


@settings(max_examples=150, deadline=None)
@given(st.lists(finding_st, max_size=25))
def test_csv_round_trip(findings):
    batch = batch_of(*findings)
    assert _rows(parse_csv(render_csv(batch))) == _rows(batch.findings)


@settings(max_examples=150, deadline=None)
@given(st.lists(finding_st, max_size=8), st.lists(finding_st, max_size=8))
def test_csv_rendering_is_injective(left, right):
    a, b = batch_of(*left), batch_of(*right)
    if _rows(a.findings) != _rows(b.findings):
        assert render_csv(a) != render_csv(b)


@settings(max_examples=100, deadline=None)
@given(st.lists(finding_st, max_size=30), st.randoms())
def test_aggregate_is_permutation_invariant(findings, rnd):
    reports = list(batch_of(*findings).file_reports)
    shuffled = reports[:]
    rnd.shuffle(shuffled)
    a, b = aggregate(reports), aggregate(shuffled)
    assert a == b
    assert sum(n for _, n in a.top_smells) <= a.finding_count == sum(a.totals.values())
    counts = [n for _, n in a.top_smells]
    assert counts == sorted(counts, reverse=True)


def test_corpus_csv_layout():
    corpus = aggregate_corpus({"p2": [FileReport("p2/x.py", (mk("TF03", "p2/x.py"),))],
                               "p1": [FileReport("p1/y.py", ())]})
    rows = render_corpus_csv(corpus).splitlines()
    assert rows[0] == "table,project,name,count"
    assert rows[1] == "project_frameworks,p1,GeneralML,0"
    assert "project_frameworks,p2,TensorFlow,1" in rows
    assert rows[rows.index("framework_distribution,,TensorFlow,1") - 1].startswith("project_frameworks,p2")
    assert rows[-1] == "top_smells,,Data Augmentation Checker,1"
    assert sum(r.startswith("framework_distribution") for r in rows) == 7
