import struct

from mlsniff.cli import run_cli
from mlsniff.engine import analyze_paths
from mlsniff.plotting import write_corpus_figures
from mlsniff.reporting import aggregate_corpus
from mlsniff.suite import FIXTURE_ROOT

PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


def _size(path):
    data = path.read_bytes()
    assert data[:8] == PNG_MAGIC
    return struct.unpack(">II", data[16:24])


def test_figures_are_written_for_the_minicorpus(tmp_path):
    corpus = aggregate_corpus({
        p.name: analyze_paths(sorted(p.rglob("*.py"))).reports
        for p in sorted((FIXTURE_ROOT / "minicorpus").iterdir())
    })
    paths = write_corpus_figures(corpus, tmp_path / "figs")
    assert [p.name for p in paths] == ["framework_distribution.png", "top_smells.png",
                                       "project_totals.png"]
    for path in paths:
        width, height = _size(path)
        assert width > 100 and height > 100


def test_empty_corpus_still_renders(tmp_path):
    paths = write_corpus_figures(aggregate_corpus({}), tmp_path)
    assert all(p.stat().st_size > 0 for p in paths)


def test_corpus_command_writes_figures_next_to_csv(tmp_path):
    out = tmp_path / "corpus.csv"
    code = run_cli(["corpus", str(FIXTURE_ROOT / "minicorpus"), "--output", str(out),
                    "--figures", str(tmp_path)])
    assert code == 0
    assert out.read_text().startswith("table,project,name,count\n")
    assert sorted(p.name for p in tmp_path.glob("*.png")) == [
        "framework_distribution.png", "project_totals.png", "top_smells.png"]
