"""
Wigner 3j and 6j symbols.

Arguments are angular momenta given by value (0, 0.5, 1, Fraction(3, 2)...).
Internally every quantum number is carried as a doubled integer, so
half-integer identities are checked exactly.
"""
import math
from fractions import Fraction
from functools import lru_cache

from scipy.special import gammaln

from cprabi.core.exceptions import AngularMomentumError

# Racah sums are evaluated on log-factorials; 50 covers every j used here
MAX_DOUBLED_J = 100


def doubled(value) -> int:
    """
    Converts angular momentum value to doubled integer representation
    :param value: integer or half-integer (int, float or Fraction)
    :return: 2*value as int
    """
    if isinstance(value, bool):
        raise AngularMomentumError(f"{value!r} is not an angular momentum value")
    if isinstance(value, float):
        if not math.isfinite(value) or 2 * value != round(2 * value):
            raise AngularMomentumError(f"{value} is not an integer or half-integer")
        twice = int(round(2 * value))
    else:
        try:
            exact = Fraction(value) * 2
        except (TypeError, ValueError):
            raise AngularMomentumError(f"{value!r} is not an angular momentum value")
        if exact.denominator != 1:
            raise AngularMomentumError(f"{value} is not an integer or half-integer")
        twice = int(exact)
    if abs(twice) > MAX_DOUBLED_J:
        raise AngularMomentumError(f"{value} exceeds supported range")
    return twice


def _log_factorial(n2: int) -> float:
    # n2 is a doubled, even, non-negative argument
    return float(gammaln(n2 // 2 + 1))


def _triangle(a2: int, b2: int, c2: int) -> bool:
    return (
        c2 <= a2 + b2
        and c2 >= abs(a2 - b2)
        and (a2 + b2 + c2) % 2 == 0
    )


def _log_delta(a2: int, b2: int, c2: int) -> float:
    return (
        _log_factorial(a2 + b2 - c2)
        + _log_factorial(a2 - b2 + c2)
        + _log_factorial(-a2 + b2 + c2)
        - _log_factorial(a2 + b2 + c2 + 2)
    )


def _check_pair(j2: int, m2: int):
    if j2 < 0:
        raise AngularMomentumError(f"Negative angular momentum j={j2 / 2}")
    if (j2 - m2) % 2 != 0:
        raise AngularMomentumError(
            f"j={j2 / 2} and m={m2 / 2} have mixed integer/half-integer character"
        )


def _signed_sum(terms):
    """
    Compensated sum of (sign, log-magnitude) terms. Magnitudes are
    rescaled by the largest one before exponentiation.
    """
    if not terms:
        return 0.0
    pivot = max(log_value for _, log_value in terms)
    total = math.fsum(sign * math.exp(log_value - pivot) for sign, log_value in terms)
    return total * math.exp(pivot)


@lru_cache(maxsize=65536)
def wigner3j_doubled(j1: int, j2: int, j3: int, m1: int, m2: int, m3: int) -> float:
    """
    Wigner 3j symbol for doubled integer arguments (Racah formula).
    """
    for j, m in ((j1, m1), (j2, m2), (j3, m3)):
        _check_pair(j, m)
    if m1 + m2 + m3 != 0:
        return 0.0
    if not _triangle(j1, j2, j3):
        return 0.0
    if abs(m1) > j1 or abs(m2) > j2 or abs(m3) > j3:
        return 0.0
    # (j1 j2 j3; 0 0 0) vanishes for odd j1+j2+j3
    if m1 == m2 == m3 == 0 and ((j1 + j2 + j3) // 2) % 2 == 1:
        return 0.0

    t1 = j2 - m1 - j3
    t2 = j1 + m2 - j3
    t3 = j1 + j2 - j3
    t4 = j1 - m1
    t5 = j2 + m2

    tmin = max(0, t1, t2)
    tmax = min(t3, t4, t5)
    terms = []
    for t in range(tmin, tmax + 1, 2):
        log_denominator = (
            _log_factorial(t)
            + _log_factorial(t - t1)
            + _log_factorial(t - t2)
            + _log_factorial(t3 - t)
            + _log_factorial(t4 - t)
            + _log_factorial(t5 - t)
        )
        terms.append((-1.0 if (t // 2) % 2 else 1.0, -log_denominator))

    log_norm = 0.5 * (
        _log_delta(j1, j2, j3)
        + _log_factorial(j1 + m1)
        + _log_factorial(j1 - m1)
        + _log_factorial(j2 + m2)
        + _log_factorial(j2 - m2)
        + _log_factorial(j3 + m3)
        + _log_factorial(j3 - m3)
    )
    phase = -1.0 if ((j1 - j2 - m3) // 2) % 2 else 1.0
    return phase * _signed_sum([(s, v + log_norm) for s, v in terms])


@lru_cache(maxsize=65536)
def wigner6j_doubled(j1: int, j2: int, j3: int, j4: int, j5: int, j6: int) -> float:
    """
    Wigner 6j symbol {j1 j2 j3; j4 j5 j6} for doubled integer arguments.
    """
    if min(j1, j2, j3, j4, j5, j6) < 0:
        raise AngularMomentumError("Negative angular momentum in 6j symbol")
    triads = ((j1, j2, j3), (j1, j5, j6), (j4, j2, j6), (j4, j5, j3))
    if not all(_triangle(*triad) for triad in triads):
        return 0.0

    a1 = j1 + j2 + j3
    a2 = j1 + j5 + j6
    a3 = j4 + j2 + j6
    a4 = j4 + j5 + j3
    b1 = j1 + j2 + j4 + j5
    b2 = j2 + j3 + j5 + j6
    b3 = j3 + j1 + j6 + j4

    tmin = max(a1, a2, a3, a4)
    tmax = min(b1, b2, b3)
    terms = []
    for t in range(tmin, tmax + 1, 2):
        log_value = _log_factorial(t + 2) - (
            _log_factorial(t - a1)
            + _log_factorial(t - a2)
            + _log_factorial(t - a3)
            + _log_factorial(t - a4)
            + _log_factorial(b1 - t)
            + _log_factorial(b2 - t)
            + _log_factorial(b3 - t)
        )
        terms.append((-1.0 if (t // 2) % 2 else 1.0, log_value))

    log_norm = 0.5 * sum(_log_delta(*triad) for triad in triads)
    return _signed_sum([(s, v + log_norm) for s, v in terms])


def wigner3j(j1, j2, j3, m1, m2, m3) -> float:
    """
    Wigner 3j symbol

     / j1 j2 j3 \\
     |          |
     \\ m1 m2 m3 /

    Returns 0 when triangle condition or m1+m2+m3=0 is not satisfied.
    Raises AngularMomentumError for non-half-integer arguments or mixed
    (j, m) parity.
    """
    return wigner3j_doubled(*(doubled(v) for v in (j1, j2, j3, m1, m2, m3)))


def wigner6j(j1, j2, j3, j4, j5, j6) -> float:
    """
    Wigner 6j symbol {j1 j2 j3; j4 j5 j6}. Returns 0 on triad failures.
    """
    return wigner6j_doubled(*(doubled(v) for v in (j1, j2, j3, j4, j5, j6)))
