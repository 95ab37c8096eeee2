"""Executable catalog of classical exact results for small reciprocal
max-type equations, run over randomized positive rational initial conditions.

Each case pairs a coefficient structure with its published outcome: an
eventual period (checked by divisibility unless the case opts into exact
match), unboundedness (checked by persistence flags and residue-class
trends), boundedness (cycle found, no flags), or plain simulation viability
for delay-subset equations that the classifier does not cover.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from .classifier import Verdict, classify
from .empirical import ClassTrend, persistence_report, residue_class_trends
from .periodicity import CycleReport, detect_cycle
from .rationals import format_rational, random_initial
from .recurrence import CoefficientSchedule, EquationConfig, Mode, simulate

F = Fraction


@dataclass(frozen=True)
class ExpectedPeriod:
    period: int
    exact: bool = False
    max_steps: int = 10**5


@dataclass(frozen=True)
class ExpectedUnbounded:
    fit_period: int
    steps: int = 10**4


@dataclass(frozen=True)
class ExpectedBounded:
    max_steps: int = 10**5


@dataclass(frozen=True)
class SimulationOnly:
    """Delay-subset equations: assert simulation viability and that the
    classifier reports NOT_APPLICABLE rather than guessing."""

    steps: int = 500


Expectation = Union[ExpectedPeriod, ExpectedUnbounded, ExpectedBounded, SimulationOnly]


@dataclass(frozen=True)
class LiteratureCase:
    id: str
    t: int
    coefficients: tuple[tuple[int, tuple[Fraction, ...]], ...]
    expected: Expectation
    provenance: str
    seed: int = 0
    max_part: int = 10**4

    def config(self, rng: random.Random) -> EquationConfig:
        schedules = tuple(CoefficientSchedule(delay=d, values=vals)
                          for d, vals in self.coefficients)
        return EquationConfig(t=self.t, schedules=schedules,
                              initial=random_initial(rng, self.t, self.max_part))


@dataclass(frozen=True)
class TrialFailure:
    trial: int
    initial: tuple[str, ...]
    reason: str


@dataclass
class CaseReport:
    case_id: str
    trials: int
    passed: int = 0
    failures: list[TrialFailure] = field(default_factory=list)
    periods_seen: set[int] = field(default_factory=set)

    @property
    def ok(self) -> bool:
        return not self.failures and self.passed == self.trials


def _check_trial(case: LiteratureCase,
                 config: EquationConfig) -> tuple[Optional[str], Optional[int]]:
    """(failure reason or None, detected period if any)."""
    exp = case.expected
    if isinstance(exp, ExpectedPeriod):
        result = detect_cycle(config, max_steps=exp.max_steps)
        if not isinstance(result, CycleReport):
            return f"no cycle within {exp.max_steps} steps", None
        if exp.exact and result.period != exp.period:
            return f"period {result.period} != expected {exp.period}", result.period
        if exp.period % result.period != 0:
            return (f"period {result.period} does not divide expected {exp.period}",
                    result.period)
        return None, result.period
    if isinstance(exp, ExpectedUnbounded):
        traj = simulate(config, exp.steps, Mode.LOG)
        report = persistence_report(traj)
        if not (report.divergence_flag and report.vanishing_flag):
            return ("persistence flags not both set: "
                    f"divergence={report.divergence_flag} "
                    f"vanishing={report.vanishing_flag}"), None
        trends = residue_class_trends(traj, exp.fit_period)
        if all(tr is ClassTrend.BOUNDED for tr in trends.trends):
            return "all residue classes look bounded", None
        return None, None
    if isinstance(exp, ExpectedBounded):
        result = detect_cycle(config, max_steps=exp.max_steps)
        if not isinstance(result, CycleReport):
            return f"no cycle within {exp.max_steps} steps", None
        report = persistence_report(simulate(config, 10 * (config.t + 1)
                                             * config.phase_modulus, Mode.LOG))
        if report.divergence_flag or report.vanishing_flag:
            return "threshold flag set on a bounded case", result.period
        return None, result.period
    if isinstance(exp, SimulationOnly):
        traj = simulate(config, exp.steps)
        if traj.truncation is not None:
            return f"bit cap hit at index {traj.truncation.index}", None
        if any(v <= 0 for v in traj.values):
            return "nonpositive term", None
        verdict = classify(config).verdict
        if verdict is not Verdict.NOT_APPLICABLE:
            return f"classifier returned {verdict.value} on a partial delay set", None
        return None, None
    raise TypeError(f"unknown expectation {exp!r}")


def run_case(case: LiteratureCase, trials: int) -> CaseReport:
    """Run ``trials`` random initial conditions; failures carry the offending
    initial conditions in "p/q" form for replay."""
    rng = random.Random(f"{case.id}:{case.seed}")
    report = CaseReport(case_id=case.id, trials=trials)
    for trial in range(trials):
        config = case.config(rng)
        reason, period = _check_trial(case, config)
        if period is not None:
            report.periods_seen.add(period)
        if reason is None:
            report.passed += 1
        else:
            report.failures.append(TrialFailure(
                trial=trial,
                initial=tuple(format_rational(v) for v in config.initial),
                reason=reason))
    return report


def _sched(delay: int, *values) -> tuple[int, tuple[Fraction, ...]]:
    return delay, tuple(Fraction(v) for v in values)


CASES: tuple[LiteratureCase, ...] = (
    # Autonomous max{1/x_{n-1}, A/x_{n-2}} catalog (Al-Amleh, Hoag & Ladas 1998).
    LiteratureCase(
        id="ahl-A-below-1", t=2,
        coefficients=(_sched(1, 1), _sched(2, F(1, 2))),
        expected=ExpectedPeriod(2),
        provenance="Al-Amleh, Hoag & Ladas 1998: period 2 for A in (0, 1)"),
    LiteratureCase(
        id="ahl-A-equal-1", t=2,
        coefficients=(_sched(1, 1), _sched(2, 1)),
        expected=ExpectedPeriod(3),
        provenance="Al-Amleh, Hoag & Ladas 1998: period 3 for A = 1"),
    LiteratureCase(
        id="ahl-A-above-1", t=2,
        coefficients=(_sched(1, 1), _sched(2, 2)),
        expected=ExpectedPeriod(4),
        provenance="Al-Amleh, Hoag & Ladas 1998: period 4 for A in (1, inf)"),
    # Period-2 coefficient catalog for max{1/x_{n-1}, A_{n-1}/x_{n-2}}
    # (Briden, Grove, Ladas & McGrath 1997), keyed by the product A_0 * A_1.
    LiteratureCase(
        id="bglm-product-below-1", t=2,
        coefficients=(_sched(1, 1), _sched(2, 1, F(1, 2))),
        expected=ExpectedPeriod(2),
        provenance="Briden et al. 1997: period 2 for A_0 A_1 in (0, 1)"),
    LiteratureCase(
        id="bglm-product-equal-1", t=2,
        coefficients=(_sched(1, 1), _sched(2, 2, F(1, 2))),
        expected=ExpectedPeriod(6),
        provenance="Briden et al. 1997: period 6 for A_0 A_1 = 1"),
    LiteratureCase(
        id="bglm-product-above-1", t=2,
        coefficients=(_sched(1, 1), _sched(2, 1, 2)),
        expected=ExpectedPeriod(4),
        provenance="Briden et al. 1997: period 4 for A_0 A_1 in (1, inf)"),
    # Period-3 coefficient catalog (Briden et al.; Grove et al.).
    LiteratureCase(
        id="gklr-all-below-1", t=2,
        coefficients=(_sched(1, 1), _sched(2, F(1, 2), F(1, 3), F(2, 3))),
        expected=ExpectedPeriod(2),
        provenance="Grove et al., period-3 coefficients: period 2 for all A_n in (0, 1)"),
    LiteratureCase(
        id="gklr-all-above-1", t=2,
        coefficients=(_sched(1, 1), _sched(2, 2, 3, F(3, 2))),
        expected=ExpectedPeriod(12),
        provenance="Grove et al., period-3 coefficients: period 12 for all A_n in (1, inf)"),
    LiteratureCase(
        id="gklr-straddle-unbounded", t=2,
        coefficients=(_sched(1, 1), _sched(2, 3, F(1, 3), 1)),
        expected=ExpectedUnbounded(fit_period=3),
        provenance="Grove et al., period-3 coefficients: unbounded when "
                   "A_{i+1} < 1 < A_i for some i"),
    LiteratureCase(
        id="gklr-other-cases", t=2,
        coefficients=(_sched(1, 1), _sched(2, 2, 1, F(1, 2))),
        expected=ExpectedPeriod(3),
        provenance="Grove et al., period-3 coefficients: period 3 in the remaining cases"),
    # max{A_{n-1}/x_{n-1}, B_{n-1}/x_{n-2}} with periods p, q (Kent & Radin 2003).
    LiteratureCase(
        id="kr-periods-coprime-to-3", t=2,
        coefficients=(_sched(1, F(3, 2), 5), _sched(2, 1, 2, F(1, 2), 3)),
        expected=ExpectedBounded(),
        provenance="Kent & Radin 2003: bounded when neither p nor q is a multiple of 3"),
    # Delay-subset equations; the published unboundedness side conditions are
    # not reproduced here, so these only assert simulation viability and the
    # classifier scope guard (Kerbert & Radin 2008 and the companion form).
    LiteratureCase(
        id="kerbert-delays-1-3", t=3,
        coefficients=(_sched(1, 2, F(1, 2), 3, F(1, 3)), _sched(3, 1, 2)),
        expected=SimulationOnly(),
        provenance="Kerbert & Radin 2008: max{A_{n-1}/x_{n-1}, B_{n-1}/x_{n-3}}"),
    LiteratureCase(
        id="kerbert-delays-2-3", t=3,
        coefficients=(_sched(2, 1, F(5, 4), F(4, 5), 2, F(1, 2)), _sched(3, 3, F(1, 3))),
        expected=SimulationOnly(),
        provenance="Kerbert & Radin companion form: max{A_{n-1}/x_{n-2}, B_{n-1}/x_{n-3}}"),
)

SUITES: dict[str, tuple[str, ...]] = {
    "ahl": ("ahl-A-below-1", "ahl-A-equal-1", "ahl-A-above-1"),
    "bglm": ("bglm-product-below-1", "bglm-product-equal-1", "bglm-product-above-1"),
    "gklr": ("gklr-all-below-1", "gklr-all-above-1",
             "gklr-straddle-unbounded", "gklr-other-cases"),
    "kr": ("kr-periods-coprime-to-3",),
    "subset": ("kerbert-delays-1-3", "kerbert-delays-2-3"),
}
SUITES["all"] = tuple(c.id for c in CASES)


def get_case(case_id: str) -> LiteratureCase:
    for case in CASES:
        if case.id == case_id:
            return case
    raise KeyError(f"no literature case {case_id!r}")


def suite_cases(name: str) -> tuple[LiteratureCase, ...]:
    if name in SUITES:
        return tuple(get_case(cid) for cid in SUITES[name])
    return (get_case(name),)
