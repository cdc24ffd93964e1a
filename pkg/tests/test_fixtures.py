import re
import shutil

import pytest

from mlsniff.engine import AnalysisConfig, analyze_paths
from mlsniff.evaluation import Label
from mlsniff.registry import REGISTRY
from mlsniff.reporting import aggregate_corpus, render_corpus_csv
from mlsniff.suite import (
    FIXTURE_ROOT,
    FixtureSuiteError,
    check_coverage,
    list_fixtures,
    load_truth,
    run_fixture_suite,
)

MARKER = re.compile(r"# (expect|near-miss): (\w+)")


def test_suite_is_clean():
    counts = run_fixture_suite()
    assert counts.fp == 0 and counts.fn == 0
    assert counts.tp >= 34


def test_every_rule_has_positive_and_negative_fixtures():
    fixtures = list_fixtures()
    check_coverage(fixtures)
    assert {f.rule_id for f in fixtures} == REGISTRY.ids()


def test_expectations_agree_with_inline_markers():
    marked = set()
    for fixture in list_fixtures():
        text = (FIXTURE_ROOT / fixture.path).read_text()
        for number, line in enumerate(text.splitlines(), 1):
            for kind, rule in MARKER.findall(line):
                label = Label.PRESENT if kind == "expect" else Label.ABSENT
                marked.add((fixture.path, number, rule, label))
    listed = {(e.file, e.line, e.detector_id, e.label) for e in load_truth()}
    assert listed == marked


def test_positive_fixtures_expect_their_rule_and_negatives_do_not():
    truth = load_truth()
    for fixture in list_fixtures():
        present = [e for e in truth if e.file == fixture.path and e.label is Label.PRESENT]
        if fixture.positive:
            assert present and all(e.detector_id == fixture.rule_id for e in present), fixture
        else:
            assert not present, fixture


def test_disabling_a_rule_produces_false_negatives():
    config = AnalysisConfig(enabled_detectors=REGISTRY.ids() - {"PD01"})
    assert run_fixture_suite(config).fn >= 1


def test_missing_fixture_fails_the_suite(tmp_path):
    root = tmp_path / "fixtures"
    shutil.copytree(FIXTURE_ROOT, root)
    (root / "rules" / "PT02" / "positive.py").unlink()
    with pytest.raises(FixtureSuiteError):
        run_fixture_suite(root=root)


def test_rule_without_negative_fails_coverage(tmp_path):
    root = tmp_path / "fixtures"
    shutil.copytree(FIXTURE_ROOT, root)
    (root / "rules" / "HF07" / "negative.py").unlink()
    text = (root / "expectations.csv").read_text()
    (root / "expectations.csv").write_text(
        "".join(line for line in text.splitlines(keepends=True) if "HF07/negative" not in line))
    with pytest.raises(FixtureSuiteError, match="HF07"):
        run_fixture_suite(root=root)


def test_minicorpus_matches_hand_count():
    projects = {}
    for project in sorted((FIXTURE_ROOT / "minicorpus").iterdir()):
        projects[project.name] = analyze_paths(sorted(project.rglob("*.py"))).reports
    expected = (FIXTURE_ROOT / "minicorpus_expected.csv").read_text()
    assert render_corpus_csv(aggregate_corpus(projects)) == expected
    assert all(n >= 1 for _, n in aggregate_corpus(projects).merged.framework_table())


def test_fixture_analysis_is_reproducible():
    assert run_fixture_suite() == run_fixture_suite()
