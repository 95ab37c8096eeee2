"""Literature case catalog: every case must pass 100 randomized trials."""

import pytest

from recipmax import CASES, Verdict, classify, get_case, run_case, suite_cases
from recipmax.harness import ExpectedPeriod, LiteratureCase, SimulationOnly, _sched


@pytest.mark.parametrize("case", CASES, ids=lambda c: c.id)
def test_case_passes_100_trials(case):
    report = run_case(case, trials=100)
    assert report.ok, report.failures[:3]


def test_period_divisibility_catalog():
    expectations = {
        "ahl-A-below-1": 2, "ahl-A-equal-1": 3, "ahl-A-above-1": 4,
        "bglm-product-below-1": 2, "bglm-product-equal-1": 6,
        "bglm-product-above-1": 4,
        "gklr-all-below-1": 2, "gklr-all-above-1": 12, "gklr-other-cases": 3,
    }
    for case_id, expected in expectations.items():
        report = run_case(get_case(case_id), trials=20)
        assert report.ok
        assert all(expected % p == 0 for p in report.periods_seen), \
            (case_id, report.periods_seen)


def test_subset_cases_guard_classifier_scope():
    for case in suite_cases("subset"):
        rng_config = case.config(__import__("random").Random(0))
        assert not rng_config.has_full_delay_set
        assert classify(rng_config).verdict is Verdict.NOT_APPLICABLE


def test_failure_serializes_initial_conditions():
    broken = LiteratureCase(
        id="deliberately-wrong", t=2,
        coefficients=(_sched(1, 1), _sched(2, 2)),
        expected=ExpectedPeriod(5),  # true period is 4, which does not divide 5
        provenance="synthetic failure path")
    report = run_case(broken, trials=3)
    assert not report.ok
    assert len(report.failures) == 3
    for failure in report.failures:
        assert len(failure.initial) == 2
        assert all("/" in s for s in failure.initial)
        assert "divide" in failure.reason


def test_suite_lookup():
    assert [c.id for c in suite_cases("ahl")] == \
        ["ahl-A-below-1", "ahl-A-equal-1", "ahl-A-above-1"]
    assert len(suite_cases("all")) == len(CASES)
    assert suite_cases("kr-periods-coprime-to-3")[0].id == "kr-periods-coprime-to-3"
    with pytest.raises(KeyError):
        suite_cases("no-such-case")
