"""Shared builders for test configs."""

from fractions import Fraction

from recipmax import CoefficientSchedule, EquationConfig

F = Fraction


def sched(delay, *values):
    return CoefficientSchedule(delay=delay, values=tuple(F(v) for v in values))


def config(t, coefficients, initial, index_base=None):
    """coefficients: iterable of (delay, values...) tuples."""
    return EquationConfig(
        t=t,
        schedules=tuple(sched(d, *vals) for d, *vals in coefficients),
        initial=tuple(F(v) for v in initial),
        index_base=index_base)


def all_ones(t):
    return config(t, [(d, 1) for d in range(1, t + 1)], [1] * t)


def ahl(A, initial=(1, 1)):
    """max{1/x_{n-1}, A/x_{n-2}} with positive initial conditions."""
    return config(2, [(1, 1), (2, A)], initial)


def grove_unbounded(initial=(1, 1)):
    """The period-3 coefficient instance with A_1 < 1 < A_0."""
    return config(2, [(1, 1), (2, F(3), F(1, 3), F(1))], initial)


def t1_quarter(initial=(1,)):
    """t = 1 with period-2 schedule (1, 4); contracts by 1/4 on odd indices."""
    return config(1, [(1, F(1), F(4))], initial)
