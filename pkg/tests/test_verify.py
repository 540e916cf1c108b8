import csv
import json

import pytest

from punct_metrics.verify import SUITE_NAMES, run_suite, write_offenders_csv


def numeric_fields(report):
    d = report.as_json()
    d.pop("wall_time")
    return json.dumps(d)


@pytest.fixture(scope="module")
def report_all():
    return run_suite("all", seed=7, samples=300)


def test_all_suites_pass(report_all):
    failed = [c.id for c in report_all.checks if not c.passed]
    assert not failed


def test_suite_contents(report_all):
    ids = {c.id for c in report_all.checks}
    for name in SUITE_NAMES:
        assert any(i.startswith(name + ".") for i in ids)
    assert "disk.D_metric_axioms" in ids
    anchors = {c.anchor for c in report_all.checks}
    assert "Q(ie^{-pi/2})=2" in anchors
    assert all(c.anchor for c in report_all.checks)


def test_determinism(report_all):
    assert numeric_fields(run_suite("all", seed=7, samples=300)) == numeric_fields(report_all)


def test_threads_do_not_change_results(report_all, monkeypatch):
    monkeypatch.setenv("PUNCT_METRICS_THREADS", "3")
    assert numeric_fields(run_suite("all", seed=7, samples=300)) == numeric_fields(report_all)


def test_checks_independent_of_suite_selection(report_all):
    sphere = {c.id: c.worst_slack for c in run_suite("sphere", seed=7, samples=300).checks}
    for c in report_all.checks:
        if c.id in sphere:
            assert sphere[c.id] == c.worst_slack


def test_seed_changes_samples():
    a = run_suite("disk", seed=1, samples=200)
    b = run_suite("disk", seed=2, samples=200)
    assert a.checks[0].worst_slack != b.checks[0].worst_slack or a.checks[1].worst_slack != b.checks[1].worst_slack


def test_sample_tiers():
    r = run_suite("all", seed=0, samples=1000)
    counts = {c.id: c.samples for c in r.checks}
    assert counts["disk.D_metric_axioms"] == 1000
    assert counts["oracle.metric_axioms"] == 10
    assert counts["sphere.dX_metric_axioms"] == 2 * 100


def test_report_layout(report_all):
    d = report_all.as_json()
    assert list(d) == ["schema", "suite", "seed", "samples", "tolerances", "passed", "checks", "wall_time"]
    assert list(d["checks"][0]) == ["id", "anchor", "samples", "tolerance", "worst_slack", "passed"]
    assert d["tolerances"]["closed_form"] == 1e-12 and d["tolerances"]["oracle"] == 1e-6


def test_offenders_csv(report_all, tmp_path):
    path = tmp_path / "o.csv"
    write_offenders_csv(report_all, path)
    rows = list(csv.DictReader(path.open()))
    assert rows and set(rows[0]) == {"check", "rank", "slack", "detail"}
    per_check = {}
    for row in rows:
        per_check.setdefault(row["check"], []).append(float(row["slack"]))
    for slacks in per_check.values():
        assert len(slacks) <= 10
        assert slacks == sorted(slacks)


@pytest.mark.parametrize("suite,samples", [("nope", 10), ("disk", 0)])
def test_bad_arguments(suite, samples):
    with pytest.raises(ValueError):
        run_suite(suite, samples=samples)
