"""Positive rational helpers used across the package.

Values are plain :class:`fractions.Fraction` instances (always stored in
lowest terms); these helpers enforce strict positivity at the boundaries
and handle the "p/q" text form used by config files and output records.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction


def check_positive(value: Fraction, what: str = "value") -> Fraction:
    """Return ``value`` if it is a strictly positive rational, else raise."""
    if not isinstance(value, Fraction):
        raise TypeError(f"{what} must be a Fraction, got {type(value).__name__}")
    if value <= 0:
        raise ValueError(f"{what} must be strictly positive, got {value}")
    return value


def parse_rational(text: str) -> Fraction:
    """Parse a positive rational from a "p/q" string or an integer literal."""
    s = text.strip()
    if "/" in s:
        num_s, _, den_s = s.partition("/")
        try:
            num, den = int(num_s), int(den_s)
        except ValueError:
            raise ValueError(f"bad rational literal {text!r}") from None
    else:
        try:
            num, den = int(s), 1
        except ValueError:
            raise ValueError(f"bad rational literal {text!r}") from None
    if num <= 0 or den <= 0:
        raise ValueError(f"rational literal must be positive with positive parts: {text!r}")
    return Fraction(num, den)


def format_rational(value: Fraction) -> str:
    """Render as "p/q", keeping an explicit denominator even when it is 1."""
    return f"{value.numerator}/{value.denominator}"


def log_of(value: Fraction) -> float:
    """Natural log of a positive rational; safe for huge numerators/denominators."""
    return math.log(value.numerator) - math.log(value.denominator)


def log10_of(value: Fraction) -> float:
    return log_of(value) / math.log(10)


def random_rational(rng: random.Random, max_part: int = 10**4) -> Fraction:
    """Ratio of two uniform integers in [1, max_part]."""
    return Fraction(rng.randint(1, max_part), rng.randint(1, max_part))


def random_initial(rng: random.Random, t: int, max_part: int = 10**4) -> tuple[Fraction, ...]:
    return tuple(random_rational(rng, max_part) for _ in range(t))
