"""Trajectory-level diagnostics: persistence flags, per-residue-class
growth trends, the exact block decay bound, and the structural argmax
patterns that drive the return-map product identity.

Everything here analyzes an immutable Trajectory; exact checks compare
rationals, empirical ones work on natural logs and apply to either mode.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from statistics import fmean, linear_regression
from typing import Optional

from .classifier import NotApplicableError, SeparationReport, gcd_boundedness_witness
from .recurrence import Mode, Trajectory

DEFAULT_VANISH = Fraction(1, 10**12)
DEFAULT_DIVERGE = Fraction(10**12)
DEFAULT_SLOPE_THRESHOLD = 1e-3


class PatternNotSatisfiedError(Exception):
    """The block argmax pattern does not hold at the requested anchor."""


def prefix_min_subsequence(trajectory: Trajectory) -> list[int]:
    """Greedy strictly decreasing subsequence of running minima.

    Returns indices n_1 < n_2 < ... such that each x_{n_{k+1}} is the first
    term strictly below x_{n_k}; consequently every term strictly between
    consecutive picks is >= the earlier pick and > the later one.
    """
    indices = [trajectory.start]
    current = trajectory.value(trajectory.start)
    for n in range(trajectory.start + 1, trajectory.last + 1):
        v = trajectory.value(n)
        if v < current:
            indices.append(n)
            current = v
    return indices


@dataclass(frozen=True)
class PersistenceReport:
    """Windowed running extremes plus threshold flags.

    Flags are monotone in trajectory length: once the running max exceeds
    the divergence threshold (or the running min drops below the vanishing
    threshold) a longer trajectory keeps the flag set.
    """

    window_length: int
    window_mins: tuple
    window_maxs: tuple
    overall_min: Fraction | float
    overall_max: Fraction | float
    divergence_flag: bool
    vanishing_flag: bool


def persistence_report(trajectory: Trajectory,
                       vanish_threshold: Fraction = DEFAULT_VANISH,
                       diverge_threshold: Fraction = DEFAULT_DIVERGE,
                       window_length: Optional[int] = None) -> PersistenceReport:
    """Check the trajectory against divergence/vanishing thresholds.

    In EXACT mode the comparisons are exact rational; in LOG mode the log
    values are compared against the log thresholds.
    """
    cfg = trajectory.config
    if window_length is None:
        window_length = 10 * (cfg.t + 1) * cfg.phase_modulus
    vals = trajectory.values
    if trajectory.mode is Mode.EXACT:
        lo, hi = Fraction(vanish_threshold), Fraction(diverge_threshold)
    else:
        lo = math.log(Fraction(vanish_threshold))
        hi = math.log(Fraction(diverge_threshold))
    mins, maxs = [], []
    for i in range(0, len(vals), window_length):
        chunk = vals[i:i + window_length]
        mins.append(min(chunk))
        maxs.append(max(chunk))
    overall_min, overall_max = min(mins), max(maxs)
    return PersistenceReport(
        window_length=window_length,
        window_mins=tuple(mins), window_maxs=tuple(maxs),
        overall_min=overall_min, overall_max=overall_max,
        divergence_flag=overall_max > hi,
        vanishing_flag=overall_min < lo)


class ClassTrend(Enum):
    TO_ZERO = "to-zero"
    TO_INFINITY = "to-infinity"
    BOUNDED = "bounded"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class ResidueClassReport:
    """Per-residue-class verdicts for index classes mod ``period``; entry r
    covers the subsequence {x_n : n == r (mod period)} after burn-in."""

    period: int
    trends: tuple[ClassTrend, ...]
    slopes: tuple[float, ...]


def _class_trend(slope: float, ys: list[float], threshold: float) -> ClassTrend:
    if abs(slope) <= threshold:
        return ClassTrend.BOUNDED
    quarter = len(ys) // 4
    if quarter == 0:
        return ClassTrend.UNDETERMINED
    means = [fmean(ys[q * quarter:(q + 1) * quarter]) for q in range(4)]
    if slope > threshold and all(a < b for a, b in zip(means, means[1:])):
        return ClassTrend.TO_INFINITY
    if slope < -threshold and all(a > b for a, b in zip(means, means[1:])):
        return ClassTrend.TO_ZERO
    return ClassTrend.UNDETERMINED


def residue_class_trends(trajectory: Trajectory, p: int,
                         burn_in: Optional[int] = None,
                         slope_threshold: float = DEFAULT_SLOPE_THRESHOLD
                         ) -> ResidueClassReport:
    """Least-squares log-slope per residue class mod p, after burn-in.

    A class is TO_INFINITY / TO_ZERO when its slope magnitude (in natural
    log per step) exceeds the threshold and its quarter-block means move
    monotonically in the same direction; slopes below threshold read as
    BOUNDED, anything else as UNDETERMINED.
    """
    if p < 1:
        raise ValueError(f"p must be >= 1, got {p}")
    computed = list(trajectory.computed_indices())
    if burn_in is None:
        burn_in = len(computed) // 5
    if len(computed) < burn_in + 10 * p:
        raise ValueError(
            f"trajectory too short: need >= burn_in + 10*p = {burn_in + 10 * p} "
            f"computed terms, have {len(computed)}")
    tail = computed[burn_in:]
    trends, slopes = [], []
    for r in range(p):
        ns = [n for n in tail if n % p == r]
        ys = [trajectory.log_value(n) for n in ns]
        if len(ys) < 2 or all(y == ys[0] for y in ys):
            slope = 0.0
        else:
            slope = linear_regression(ns, ys).slope
        trends.append(_class_trend(slope, ys, slope_threshold))
        slopes.append(slope)
    return ResidueClassReport(period=p, trends=tuple(trends), slopes=tuple(slopes))


def verify_decay_bound(trajectory: Trajectory, report: SeparationReport) -> bool:
    """Exact check of the per-block contraction implied by a separation witness.

    With j the witness shift and a the decay factor, verifies both
    x_{(t+1)n + (t+2) + j} <= a * x_{(t+1)n + 1 + j} for every applicable n
    and the iterated bound x_{(t+1)n + 1 + j} <= a^n * x_{1 + j}.
    """
    if report is None:
        raise NotApplicableError("no separation report to verify against")
    if not report.decay_factor < 1:
        raise NotApplicableError(
            f"separation report requires decay factor < 1, got {report.decay_factor}")
    if trajectory.mode is not Mode.EXACT:
        raise ValueError("decay bound verification needs an exact trajectory")
    t = trajectory.config.t
    block = t + 1
    j = report.shift
    alpha = report.decay_factor
    if not trajectory.covers(1 + j) or not trajectory.covers(block + 1 + j):
        raise ValueError("trajectory too short to check any block")
    anchor = trajectory.value(1 + j)
    alpha_pow = Fraction(1)
    n = 0
    while trajectory.covers(block * n + block + 1 + j):  # index (t+1)n + (t+2) + j
        if not trajectory.value(block * n + block + 1 + j) \
                <= alpha * trajectory.value(block * n + 1 + j):
            return False
        if not trajectory.value(block * n + 1 + j) <= alpha_pow * anchor:
            return False
        alpha_pow *= alpha
        n += 1
    return True


def _block_pull_equal(trajectory: Trajectory, m: int, delay: int) -> bool:
    """True iff the delay-``delay`` argument attains the maximum at index m,
    i.e. x_m * x_{m-delay} == A^delay_{m-1} exactly.  Tie-safe: this holds
    even when the recorded argmax is a smaller tied delay."""
    coeff = trajectory.config.coefficient(delay, m - 1)
    return trajectory.value(m) * trajectory.value(m - delay) == coeff


def verify_return_map_identity(trajectory: Trajectory, anchor: int, P: int) -> bool:
    """Check the block argmax pattern at ``anchor`` and the product identity.

    Pattern: for every j in [t] and k in [P], the term x_{anchor + k(t+1) - j}
    takes its value through the delay-(t+1-j) argument, pulling back to
    x_{anchor + (k-1)(t+1)}.  If the pattern fails, PatternNotSatisfiedError
    is raised.  When it holds, the product identity

        x_{anchor + P(t+1)} == x_anchor *
            prod_{k=1..P} max_j (A^j_{anchor+k(t+1)-1} / A^{t+1-j}_{anchor+k(t+1)-j-1})

    must hold exactly, and when some delay i has gcd(t+1, p_i * p_{t+1-i}) == 1
    with p_i * p_{t+1-i} == P, additionally x_{anchor + P(t+1)} >= x_anchor.
    Returns True iff every applicable check passes; a False is a bug signal,
    since the identity is forced by the pattern.
    """
    if trajectory.mode is not Mode.EXACT:
        raise ValueError("return-map verification needs an exact trajectory")
    cfg = trajectory.config
    if not cfg.has_full_delay_set:
        raise NotApplicableError("return-map pattern needs the full delay set")
    t = cfg.t
    block = t + 1
    if P < 1:
        raise ValueError(f"P must be >= 1, got {P}")
    if not (trajectory.covers(anchor - t) and trajectory.covers(anchor + P * block)):
        raise ValueError(
            f"trajectory must cover indices {anchor - t}..{anchor + P * block}")
    for k in range(1, P + 1):
        for j in range(1, t + 1):
            m = anchor + k * block - j
            if not _block_pull_equal(trajectory, m, block - j):
                raise PatternNotSatisfiedError(
                    f"pattern fails at index {m} (k={k}, j={j})")
    product = Fraction(1)
    for k in range(1, P + 1):
        product *= max(cfg.coefficient(j, anchor + k * block - 1)
                       / cfg.coefficient(block - j, anchor + k * block - j - 1)
                       for j in range(1, t + 1))
    if trajectory.value(anchor + P * block) != trajectory.value(anchor) * product:
        return False
    witness = gcd_boundedness_witness(t, cfg.periods)
    if witness is not None and cfg.periods[witness] * cfg.periods[t + 1 - witness] == P:
        if not trajectory.value(anchor + P * block) >= trajectory.value(anchor):
            return False
    return True


def small_value_pattern_check(trajectory: Trajectory, anchor: int, M: int) -> bool:
    """Backward form of the block pattern around a small term.

    True iff for every i in [t] and 0 <= k < M the term x_{anchor - k(t+1) - i}
    takes its value through the delay-(t+1-i) argument, i.e. equals
    A^{t+1-i}_{anchor - k(t+1) - i - 1} / x_{anchor - (k+1)(t+1)}.
    """
    if trajectory.mode is not Mode.EXACT:
        raise ValueError("pattern check needs an exact trajectory")
    cfg = trajectory.config
    if not cfg.has_full_delay_set:
        raise NotApplicableError("block pattern needs the full delay set")
    t = cfg.t
    block = t + 1
    if M < 1:
        raise ValueError(f"M must be >= 1, got {M}")
    lowest = anchor - M * block - t
    if not (trajectory.covers(lowest) and trajectory.covers(anchor)):
        raise ValueError(f"trajectory must cover indices {lowest}..{anchor}")
    for k in range(M):
        for i in range(1, t + 1):
            m = anchor - k * block - i
            if not _block_pull_equal(trajectory, m, block - i):
                return False
    return True
