"""Exact and log-domain evaluation of reciprocal max-type recurrences.

The system is

    x_n = max over listed delays k of  A^k_{n-1} / x_{n-k}

where each coefficient schedule {A^k_n} is a periodic sequence of positive
rationals.  By default the delay set is the full {1, ..., t}; arbitrary
strictly increasing subsets with max delay t are supported in simulation.

Indexing convention: the config carries t initial values
x_{index_base}, ..., x_{index_base + t - 1} and the first computed term is
x_{index_base + t}.  The default index_base of 1 - t makes the initial
window x_{1-t}, ..., x_0 and starts computation at n = 1.  Coefficient
schedules are indexed absolutely: A^k_n = values[n mod period].

In log-domain mode the recurrence becomes the max-plus system
log x_n = max_k (log A^k_{n-1} - log x_{n-k}), evaluated in binary64.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence, Union

from .rationals import check_positive, log_of

DEFAULT_BIT_CAP = 10**6
DEFAULT_TIE_TOL = 1e-12


class ConfigError(ValueError):
    """Raised for structurally invalid configurations or windows."""


class Mode(enum.Enum):
    EXACT = "exact"
    LOG = "log"


@dataclass(frozen=True)
class CoefficientSchedule:
    """Periodic schedule of positive rational coefficients for one delay."""

    delay: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        if self.delay < 1:
            raise ConfigError(f"delay must be >= 1, got {self.delay}")
        if not self.values:
            raise ConfigError(f"schedule for delay {self.delay} has no values")
        for v in self.values:
            check_positive(v, f"coefficient for delay {self.delay}")

    @property
    def period(self) -> int:
        return len(self.values)

    def at(self, n: int) -> Fraction:
        """A^delay_n; total for any integer index (wraps mod period)."""
        return self.values[n % self.period]


@dataclass(frozen=True)
class EquationConfig:
    """A complete instance: max delay t, one schedule per listed delay,
    t strictly positive initial values, and the index base."""

    t: int
    schedules: tuple[CoefficientSchedule, ...]
    initial: tuple[Fraction, ...]
    index_base: Optional[int] = None

    def __post_init__(self):
        if self.t < 1:
            raise ConfigError(f"t must be >= 1, got {self.t}")
        delays = [s.delay for s in self.schedules]
        if not delays or any(b <= a for a, b in zip(delays, delays[1:])):
            raise ConfigError(f"delays must be strictly increasing, got {delays}")
        if delays[-1] != self.t:
            raise ConfigError(f"max delay {delays[-1]} must equal t = {self.t}")
        if any(d < 1 for d in delays):
            raise ConfigError(f"delays must lie in [1, t], got {delays}")
        if len(self.initial) != self.t:
            raise ConfigError(
                f"need exactly t = {self.t} initial values, got {len(self.initial)}")
        for v in self.initial:
            check_positive(v, "initial condition")
        if self.index_base is None:
            object.__setattr__(self, "index_base", 1 - self.t)

    @property
    def delays(self) -> tuple[int, ...]:
        return tuple(s.delay for s in self.schedules)

    @property
    def has_full_delay_set(self) -> bool:
        return self.delays == tuple(range(1, self.t + 1))

    @property
    def periods(self) -> dict[int, int]:
        return {s.delay: s.period for s in self.schedules}

    @property
    def phase_modulus(self) -> int:
        """lcm of all schedule periods; coefficient context repeats with this."""
        return math.lcm(*(s.period for s in self.schedules))

    def schedule(self, delay: int) -> CoefficientSchedule:
        for s in self.schedules:
            if s.delay == delay:
                return s
        raise ConfigError(f"no coefficient schedule for delay {delay}")

    def coefficient(self, delay: int, n: int) -> Fraction:
        return self.schedule(delay).at(n)

    @property
    def first_computed_index(self) -> int:
        return self.index_base + self.t


@dataclass(frozen=True)
class TruncationNote:
    """Emitted when the exact-mode bit-size cap stops a simulation early."""

    index: int       # first index whose value exceeded the cap
    bits: int        # numerator + denominator bit length of that value
    cap: int


@dataclass
class Trajectory:
    """Contiguously indexed solution terms with per-step argmax delays.

    Entry n holds the exact value (EXACT mode) or the natural log of the
    value (LOG mode).  ``argmax`` is None for the t initial entries and the
    smallest delay attaining the maximum for computed entries.
    """

    config: EquationConfig
    mode: Mode
    values: list = field(default_factory=list)
    argmax: list = field(default_factory=list)
    truncation: Optional[TruncationNote] = None

    @property
    def start(self) -> int:
        return self.config.index_base

    @property
    def last(self) -> int:
        return self.start + len(self.values) - 1

    @property
    def first_computed(self) -> int:
        return self.config.first_computed_index

    def covers(self, n: int) -> bool:
        return self.start <= n <= self.last

    def value(self, n: int):
        if not self.covers(n):
            raise IndexError(f"index {n} outside trajectory [{self.start}, {self.last}]")
        return self.values[n - self.start]

    def argmax_delay(self, n: int) -> Optional[int]:
        if not self.covers(n):
            raise IndexError(f"index {n} outside trajectory [{self.start}, {self.last}]")
        return self.argmax[n - self.start]

    def log_value(self, n: int) -> float:
        """Natural log of the term, regardless of mode."""
        v = self.value(n)
        return log_of(v) if self.mode is Mode.EXACT else v

    def computed_indices(self) -> range:
        return range(self.first_computed, self.last + 1)


Window = Sequence[Union[Fraction, float]]


def step(config: EquationConfig, window: Window, n: int) -> tuple[Fraction, int]:
    """One exact update: value and argmax delay of x_n from the previous window.

    ``window`` lists x_{n-t}, ..., x_{n-1} in order.  The returned value
    satisfies value * window[t - argmax] == A^argmax_{n-1} exactly; ties are
    broken toward the smallest delay.
    """
    if len(window) != config.t:
        raise ConfigError(
            f"window must hold the last t = {config.t} values, got {len(window)}")
    best: Optional[Fraction] = None
    best_delay = 0
    for sched in config.schedules:
        k = sched.delay
        prev = window[config.t - k]
        if prev <= 0:
            raise ConfigError(f"window entry for delay {k} must be positive, got {prev}")
        cand = sched.at(n - 1) / prev
        if best is None or cand > best:
            best, best_delay = cand, k
    return best, best_delay


def _log_step(log_scheds, t, window: Sequence[float], n: int,
              tie_tol: float) -> tuple[float, int]:
    """Max-plus update in float log domain; argmax is tie-tolerant."""
    args = [(la[(n - 1) % len(la)] - window[t - k], k) for k, la in log_scheds]
    best = max(a for a, _ in args)
    for a, k in args:
        if best - a < tie_tol:
            return best, k
    raise AssertionError("unreachable: max not attained")


def simulate(config: EquationConfig, steps: int, mode: Mode = Mode.EXACT,
             bit_cap: int = DEFAULT_BIT_CAP,
             tie_tol: float = DEFAULT_TIE_TOL) -> Trajectory:
    """Iterate the recurrence for ``steps`` terms after the initial window.

    EXACT mode preserves positivity and exact certificates but enforces a
    bit-size cap on numerator + denominator length; hitting the cap stops
    the run and records a TruncationNote rather than degrading silently.
    """
    if steps < 1:
        raise ConfigError(f"steps must be >= 1, got {steps}")
    traj = Trajectory(config=config, mode=mode)
    t = config.t
    if mode is Mode.EXACT:
        traj.values = list(config.initial)
        traj.argmax = [None] * t
        window = list(config.initial)
        for offset in range(steps):
            n = config.first_computed_index + offset
            value, delay = step(config, window, n)
            bits = value.numerator.bit_length() + value.denominator.bit_length()
            if bits > bit_cap:
                traj.truncation = TruncationNote(index=n, bits=bits, cap=bit_cap)
                break
            traj.values.append(value)
            traj.argmax.append(delay)
            window.append(value)
            del window[0]
    else:
        traj.values = [log_of(v) for v in config.initial]
        traj.argmax = [None] * t
        window = list(traj.values)
        log_scheds = [(s.delay, [log_of(v) for v in s.values]) for s in config.schedules]
        for offset in range(steps):
            n = config.first_computed_index + offset
            value, delay = _log_step(log_scheds, t, window, n, tie_tol)
            traj.values.append(value)
            traj.argmax.append(delay)
            window.append(value)
            del window[0]
    return traj
