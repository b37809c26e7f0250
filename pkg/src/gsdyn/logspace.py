"""Sign + natural-log-magnitude scalar arithmetic.

Quantities in the growth experiments span ranges like 2^(m^2/2) that leave
double precision around m = 40, so everything that can get large is carried
as a pair (sign, log|value|).  sign is -1, 0 or +1; a zero always has
log-magnitude -inf.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Tuple

NEG_INF = float("-inf")
LN2 = math.log(2.0)

SLog = Tuple[int, float]

ZERO: SLog = (0, NEG_INF)
ONE: SLog = (1, 0.0)


def log_abs_int(n: int) -> float:
    """log|n| for arbitrarily large Python ints (0 maps to -inf)."""
    if n == 0:
        return NEG_INF
    n = abs(n)
    shift = max(0, n.bit_length() - 53)
    return math.log(n >> shift) + shift * LN2


def log_abs_fraction(x: Fraction) -> float:
    if x == 0:
        return NEG_INF
    return log_abs_int(x.numerator) - log_abs_int(x.denominator)


def slog_of_int(n: int) -> SLog:
    if n == 0:
        return ZERO
    return (1 if n > 0 else -1, log_abs_int(n))


def slog_of_fraction(x: Fraction) -> SLog:
    if x == 0:
        return ZERO
    return (1 if x > 0 else -1, log_abs_fraction(x))


def slog_of_float(x: float) -> SLog:
    if x == 0.0:
        return ZERO
    return (1 if x > 0 else -1, math.log(abs(x)))


def slog_to_float(v: SLog) -> float:
    """Back to a double; overflows to +-inf rather than raising."""
    s, l = v
    if s == 0:
        return 0.0
    if l > 709.0:
        return math.inf * s
    return s * math.exp(l)


def slog_mul(a: SLog, b: SLog) -> SLog:
    if a[0] == 0 or b[0] == 0:
        return ZERO
    return (a[0] * b[0], a[1] + b[1])


def slog_pow(a: SLog, k: int) -> SLog:
    if k == 0:
        return ONE
    if a[0] == 0:
        return ZERO
    sign = 1 if (a[0] > 0 or k % 2 == 0) else -1
    return (sign, a[1] * k)


def slog_sum(terms: Iterable[SLog]) -> SLog:
    """Signed sum; cancellation below double precision collapses to zero."""
    terms = [t for t in terms if t[0] != 0]
    if not terms:
        return ZERO
    peak = max(l for _, l in terms)
    if peak == NEG_INF:
        return ZERO
    acc = 0.0
    for s, l in terms:
        acc += s * math.exp(l - peak)
    if acc == 0.0:
        return ZERO
    return (1 if acc > 0 else -1, peak + math.log(abs(acc)))
