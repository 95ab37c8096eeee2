"""Eventual-periodicity detection for exact trajectories.

The driven state (window of the last t values, coefficient phase mod the
lcm of the schedule periods) evolves deterministically, so the first exact
repeat of a state certifies that the value sequence is eventually periodic.
The detected state-cycle length is then reduced to the minimal value period
by a divisor check, and the preperiod is rolled back as far as the stored
values allow.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .recurrence import (DEFAULT_BIT_CAP, ConfigError, EquationConfig, Mode,
                         Trajectory, TruncationNote, simulate, step)

DEFAULT_MAX_STEPS = 10**5


@dataclass(frozen=True)
class CycleReport:
    """Certified eventual periodicity: x_{n+period} == x_n exactly for all
    preperiod <= n <= preperiod + verified_horizon.  ``period`` is minimal
    (no proper divisor works); it divides ``state_period``, the length of
    the driven-state cycle."""

    preperiod: int
    period: int
    state_period: int
    verified_horizon: int
    min_value: Fraction
    max_value: Fraction


@dataclass(frozen=True)
class NotFound:
    """No state repeat within the step budget.  Not a proof of unboundedness."""

    steps: int
    min_value: Fraction
    max_value: Fraction
    truncated: bool = False


def _divisors(n: int) -> list[int]:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


def minimal_period(segment, p: int) -> int:
    """Smallest divisor d of p such that the p-periodic ``segment`` is d-periodic.

    The segment must actually be p-periodic over its full length; anything
    else is a contract violation.
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    if len(segment) < p:
        raise ValueError(f"segment of length {len(segment)} cannot exhibit period {p}")
    for i in range(len(segment) - p):
        if segment[i] != segment[i + p]:
            raise ValueError(f"segment is not {p}-periodic at offset {i}")
    for d in _divisors(p):
        if all(segment[i] == segment[i + d] for i in range(len(segment) - d)):
            return d
    return p


def detect_cycle(config: EquationConfig, max_steps: int = DEFAULT_MAX_STEPS,
                 bit_cap: int = DEFAULT_BIT_CAP) -> Union[CycleReport, NotFound]:
    """Run the exact recurrence until a driven state repeats.

    Returns a CycleReport on success, else NotFound carrying the observed
    min/max values (and whether the bit-size cap cut the run short).
    """
    t = config.t
    L = config.phase_modulus
    base = config.index_base
    values: list[Fraction] = list(config.initial)
    window = list(config.initial)
    last = base + t - 1  # index of the last stored value

    def state_key(n_last: int):
        return (tuple(window), n_last % L)

    seen = {state_key(last): last}
    for _ in range(max_steps):
        n = last + 1
        value, _delay = step(config, window, n)
        bits = value.numerator.bit_length() + value.denominator.bit_length()
        if bits > bit_cap:
            return NotFound(steps=len(values) - t, min_value=min(values),
                            max_value=max(values), truncated=True)
        values.append(value)
        window.append(value)
        del window[0]
        last = n
        key = state_key(last)
        if key in seen:
            return _reduce(config, values, first=seen[key], repeat=last)
        seen[key] = last
    return NotFound(steps=len(values) - t, min_value=min(values),
                    max_value=max(values), truncated=False)


def _reduce(config: EquationConfig, values: list[Fraction],
            first: int, repeat: int) -> CycleReport:
    """Minimize the value period of the certified cycle and roll back the
    preperiod.  ``first``/``repeat`` are the absolute indices whose driven
    states coincide, so values from index first - t + 1 on are purely
    (repeat - first)-periodic."""
    base = config.index_base
    t = config.t
    state_period = repeat - first

    def at(n: int) -> Fraction:
        return values[n - base]

    cycle_start = first - t + 1  # earliest index certified periodic
    cycle = [at(cycle_start + i) for i in range(state_period)]
    period = state_period
    for d in _divisors(state_period):
        if all(cycle[i] == cycle[(i + d) % state_period] for i in range(state_period)):
            period = d
            break

    n = cycle_start
    while n - 1 >= base and at(n - 1) == at(n - 1 + period):
        n -= 1
    preperiod = n

    last = base + len(values) - 1
    for m in range(preperiod, last - period + 1):
        if at(m) != at(m + period):  # pragma: no cover - state repeat rules this out
            raise AssertionError(f"cycle certificate violated at index {m}")
    return CycleReport(preperiod=preperiod, period=period,
                       state_period=state_period,
                       verified_horizon=last - period - preperiod,
                       min_value=min(values), max_value=max(values))


def verify_periodicity(config: EquationConfig, start: int, p: int,
                       horizon: int) -> bool:
    """True iff x_{n+p} == x_n exactly for all start <= n <= start + horizon."""
    if p < 1 or horizon < 0:
        raise ValueError(f"need p >= 1 and horizon >= 0, got p={p}, horizon={horizon}")
    if start < config.index_base:
        raise ConfigError(
            f"start {start} precedes the first index {config.index_base}")
    steps = start + horizon + p - config.index_base - config.t + 1
    traj: Trajectory = simulate(config, max(steps, 1), Mode.EXACT)
    if traj.truncation is not None:
        raise ConfigError(f"bit-size cap hit while verifying: {traj.truncation}")
    return all(traj.value(n) == traj.value(n + p)
               for n in range(start, start + horizon + 1))
