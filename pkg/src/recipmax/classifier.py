"""Sufficient conditions for boundedness and unboundedness.

All tests here are exact (integer gcds, rational sup/inf over finite
residue orbits) and apply only to the full delay set {1, ..., t}; partial
delay sets raise NotApplicableError.  Three checks are provided:

* gcd test: some delay i has gcd(t+1, p_i * p_{t+1-i}) == 1, which forces
  every positive solution to be bounded and persistent.
* separation test: for some shift j, every delay i has the sup of A^i over
  the progression (t+1)n + (t+1) + j strictly below the inf of A^{t+1-i}
  over (t+1)n + (t+1-i) + j.  Then one residue class mod t+1 contracts by
  the decay factor per block and every positive solution is unbounded.
* straddle test: a periodic-coefficient specialization where schedules
  with period a multiple of t+1 straddle the full value range of their
  partner schedule at block-aligned positions; it implies the separation
  condition.

Shifts are searched over the full residue system {0, ..., t}; only the
residue of the shift mod t+1 matters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Mapping, Optional

from .recurrence import EquationConfig


class NotApplicableError(Exception):
    """The requested check does not apply (e.g. partial delay set)."""


def _require_full_delays(config: EquationConfig) -> None:
    if not config.has_full_delay_set:
        raise NotApplicableError(
            f"delay set {config.delays} is not the full set 1..{config.t}")


def _orbit(start: int, step: int, modulus: int) -> set[int]:
    """Residues {start + k*step mod modulus}; an arithmetic progression of
    stride gcd(step, modulus) through start."""
    g = math.gcd(step, modulus)
    return {(start + i * g) % modulus for i in range(modulus // g)}


def gcd_boundedness_witness(t: int, periods: Mapping[int, int]) -> Optional[int]:
    """Smallest i in [1, t] with gcd(t+1, p_i * p_{t+1-i}) == 1, or None.

    ``periods`` must cover every delay 1..t; a partial delay set is a scope
    error, distinct from a plain negative answer.
    """
    if set(periods) != set(range(1, t + 1)):
        raise NotApplicableError(
            f"gcd test needs periods for the full delay set 1..{t}, got {sorted(periods)}")
    for i in range(1, t + 1):
        if math.gcd(t + 1, periods[i] * periods[t + 1 - i]) == 1:
            return i
    return None


@dataclass(frozen=True)
class SeparationReport:
    """Witness for the separation condition.

    ``sup_by_delay[i]`` is the sup of A^i over (t+1)n + (t+1) + shift and
    ``inf_by_delay[i]`` the inf of A^{t+1-i} over (t+1)n + (t+1-i) + shift;
    the condition is sup_by_delay[i] < inf_by_delay[i] for every i, and then
    decay_factor = max_i sup_by_delay[i] / inf_by_delay[i] < 1.
    """

    shift: int
    sup_by_delay: dict[int, Fraction]
    inf_by_delay: dict[int, Fraction]
    decay_factor: Fraction


def separation_witness(config: EquationConfig) -> Optional[SeparationReport]:
    """Report for the smallest witness shift, or None if no shift works.

    Sup/inf are exact maxima/minima over the finite residue orbit of the
    index progressions modulo each schedule period.
    """
    _require_full_delays(config)
    t = config.t
    block = t + 1
    for shift in range(block):
        sup_by_delay: dict[int, Fraction] = {}
        inf_by_delay: dict[int, Fraction] = {}
        ok = True
        for i in range(1, t + 1):
            high = config.schedule(i)
            low = config.schedule(t + 1 - i)
            sup = max(high.values[r] for r in _orbit(block + shift, block, high.period))
            inf = min(low.values[r] for r in _orbit(block - i + shift, block, low.period))
            sup_by_delay[i] = sup
            inf_by_delay[i] = inf
            if not sup < inf:
                ok = False
                break
        if ok:
            decay = max(sup_by_delay[i] / inf_by_delay[i] for i in range(1, t + 1))
            return SeparationReport(shift=shift, sup_by_delay=sup_by_delay,
                                    inf_by_delay=inf_by_delay, decay_factor=decay)
    return None


@dataclass(frozen=True)
class StraddleWitness:
    """Witness for the straddle test: the satisfied case (1 or 2), the shift,
    and the block count k per constrained delay (period = (t+1) * k)."""

    case: int
    shift: int
    block_counts: dict[int, int]


def _chain_holds(sched, other_values, shift: int, count: int, t: int) -> bool:
    """Block-aligned chain: for every l in 1..count,
    sched[(t+1)l + (t+1) + shift] < min(other) < max(other) < sched[(t+1)l + delay + shift].
    All inequalities strict, indices wrapping by periodicity."""
    lo_bound = min(other_values)
    hi_bound = max(other_values)
    if not lo_bound < hi_bound:
        return False
    block = t + 1
    for l in range(1, count + 1):
        low = sched.at(block * l + block + shift)
        high = sched.at(block * l + sched.delay + shift)
        if not (low < lo_bound and hi_bound < high):
            return False
    return True


def straddle_witness(config: EquationConfig) -> Optional[StraddleWitness]:
    """First satisfied case of the periodic-coefficient straddle test.

    For odd t the middle delay i = (t+1)/2 is its own partner; its premise
    (period a multiple of t+1 and the block-aligned self-inequality) must
    hold for the same shift before either case can apply.  A single shift
    is shared across all constrained delays.
    """
    _require_full_delays(config)
    t = config.t
    block = t + 1
    d = t // 2 if t % 2 == 0 else (t - 1) // 2

    def middle_ok(shift: int) -> bool:
        if t % 2 == 0:
            return True
        i = (t + 1) // 2
        sched = config.schedule(i)
        if sched.period % block != 0:
            return False
        count = sched.period // block
        return all(sched.at(block * l + block + shift) < sched.at(block * l + i + shift)
                   for l in range(1, count + 1))

    for shift in range(block):
        if not middle_ok(shift):
            continue
        for case in (1, 2):
            counts: dict[int, int] = {}
            ok = True
            for i in range(1, d + 1):
                constrained, partner = (i, t + 1 - i) if case == 1 else (t + 1 - i, i)
                sched = config.schedule(constrained)
                if sched.period % block != 0:
                    ok = False
                    break
                count = sched.period // block
                if not _chain_holds(sched, config.schedule(partner).values,
                                    shift, count, t):
                    ok = False
                    break
                counts[constrained] = count
            if ok:
                if t % 2 == 1:
                    mid = (t + 1) // 2
                    counts[mid] = config.schedule(mid).period // block
                return StraddleWitness(case=case, shift=shift, block_counts=counts)
    return None


class Verdict(Enum):
    BOUNDED = "bounded"
    UNBOUNDED = "unbounded"
    UNKNOWN = "unknown"
    NOT_APPLICABLE = "not-applicable"


@dataclass(frozen=True)
class Classification:
    """Outcome of the sufficient-condition dispatch, with full evidence.

    The conditions are sufficient only: UNKNOWN means no test fired, not
    that the solution is unbounded or bounded.
    """

    verdict: Verdict
    gcd_witness: Optional[int] = None
    gcd_product: Optional[int] = None
    separation: Optional[SeparationReport] = None
    straddle: Optional[StraddleWitness] = None
    notes: tuple[str, ...] = ()


def classify(config: EquationConfig) -> Classification:
    """Dispatch: gcd test first (bounded), then separation or straddle
    (unbounded), else UNKNOWN carrying the negative results.  Partial delay
    sets yield NOT_APPLICABLE since every test needs the full set."""
    if not config.has_full_delay_set:
        return Classification(
            verdict=Verdict.NOT_APPLICABLE,
            notes=(f"delay set {config.delays} is not the full set 1..{config.t}; "
                   "the boundedness tests only cover the full delay set",))
    t = config.t
    witness = gcd_boundedness_witness(t, config.periods)
    if witness is not None:
        product = config.periods[witness] * config.periods[t + 1 - witness]
        return Classification(verdict=Verdict.BOUNDED, gcd_witness=witness,
                              gcd_product=product)
    separation = separation_witness(config)
    if separation is not None:
        return Classification(verdict=Verdict.UNBOUNDED, separation=separation)
    straddle = straddle_witness(config)
    if straddle is not None:
        return Classification(verdict=Verdict.UNBOUNDED, straddle=straddle)
    return Classification(
        verdict=Verdict.UNKNOWN,
        notes=("no i with gcd(t+1, p_i * p_{t+1-i}) == 1",
               "no shift satisfies the separation condition",
               "no shift satisfies the straddle condition"))
