import pytest

from lconvex.cat import TheoremReport
from lconvex.documents import dumps
from lconvex.suites import SUITES, SuiteConfig, corrupted_space, hull_lemma_report, run_suite


@pytest.mark.parametrize("name", sorted(SUITES))
def test_small_runs_pass(name):
    result = run_suite(name, SuiteConfig(trials=4, seed=3))
    assert result.reports
    assert result.passed, [r.to_document() for r in result.reports if not r.agreement]
    assert not result.decider_disagreements


@pytest.mark.parametrize("name", sorted(SUITES))
def test_reports_are_deterministic(name):
    a = dumps(run_suite(name, SuiteConfig(trials=3, seed=9)).to_document())
    b = dumps(run_suite(name, SuiteConfig(trials=3, seed=9)).to_document())
    assert a == b


def test_seed_changes_instances():
    a = dumps(run_suite("sobrification", SuiteConfig(trials=10, seed=1)).to_document())
    b = dumps(run_suite("sobrification", SuiteConfig(trials=10, seed=2)).to_document())
    assert a != b


def test_fault_injection_is_caught():
    result = run_suite("hull-lemma", SuiteConfig(trials=2, seed=0, inject_fault=True))
    assert not result.passed
    bad = [r for r in result.reports if not r.agreement]
    assert len(bad) == 1 and bad[0].instance["label"] == "injected-fault"
    assert bad[0].witnesses


def test_corrupted_space_breaks_hull_lemma():
    report = hull_lemma_report(corrupted_space(), "fault")
    assert not report.conditions["hull_convex"]


def test_fault_injection_only_where_supported():
    with pytest.raises(ValueError):
        run_suite("sobrification", SuiteConfig(inject_fault=True))
    with pytest.raises(KeyError):
        run_suite("no-such-suite", SuiteConfig())


def test_max_convexes_is_respected():
    result = run_suite("sobrification", SuiteConfig(trials=20, seed=0, max_convexes=4))
    assert all(len(r.instance["X"]["convexes"]) <= 4 for r in result.reports)


def test_suite_summary_counts():
    result = run_suite("retraction", SuiteConfig(trials=5, seed=0))
    doc = result.to_document()
    assert doc["summary"]["reports"] == len(doc["reports"]) == 5
    assert doc["summary"]["agreements"] == 5
    assert all(isinstance(TheoremReport(**{k: r[k] for k in ("theorem", "conditions")}), TheoremReport)
               for r in doc["reports"])
