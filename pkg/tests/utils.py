"""
Slow reference implementations used as test oracles
"""
import cmath
import json
import math
from fractions import Fraction

import numpy as np

from cprabi.paths import default_species_path

SPEED_OF_LIGHT = 299792458.0


def rb87_document():
    with open(default_species_path) as f:
        return json.load(f)


def _factorial(value: Fraction) -> int:
    assert value.denominator == 1 and value >= 0
    return math.factorial(int(value))


def _exact_delta(a, b, c) -> Fraction:
    return Fraction(
        _factorial(a + b - c) * _factorial(a - b + c) * _factorial(-a + b + c),
        _factorial(a + b + c + 1),
    )


def _is_triad(a, b, c) -> bool:
    return abs(a - b) <= c <= a + b and (a + b + c).denominator == 1


def exact_wigner3j(j1, j2, j3, m1, m2, m3) -> float:
    """
    Racah formula on exact rationals, square root taken once at the end
    """
    j1, j2, j3, m1, m2, m3 = (Fraction(v) for v in (j1, j2, j3, m1, m2, m3))
    if m1 + m2 + m3 != 0 or not _is_triad(j1, j2, j3):
        return 0.0
    if abs(m1) > j1 or abs(m2) > j2 or abs(m3) > j3:
        return 0.0
    total = Fraction(0)
    k = 0
    while True:
        args = (
            k,
            j3 - j2 + k + m1,
            j3 - j1 + k - m2,
            j1 + j2 - j3 - k,
            j1 - k - m1,
            j2 - k + m2,
        )
        if args[3] < 0 or args[4] < 0 or args[5] < 0:
            break
        if all(a >= 0 for a in args):
            denominator = 1
            for a in args:
                denominator *= _factorial(Fraction(a))
            total += Fraction((-1) ** k, denominator)
        k += 1
    squared = _exact_delta(j1, j2, j3)
    for v in (j1 + m1, j1 - m1, j2 + m2, j2 - m2, j3 + m3, j3 - m3):
        squared *= _factorial(v)
    phase = (-1) ** int(j1 - j2 - m3)
    return phase * float(total) * math.sqrt(squared)


def exact_wigner6j(j1, j2, j3, j4, j5, j6) -> float:
    j1, j2, j3, j4, j5, j6 = (Fraction(v) for v in (j1, j2, j3, j4, j5, j6))
    triads = ((j1, j2, j3), (j1, j5, j6), (j4, j2, j6), (j4, j5, j3))
    if not all(_is_triad(*t) for t in triads):
        return 0.0
    a = [sum(t) for t in triads]
    b = [j1 + j2 + j4 + j5, j2 + j3 + j5 + j6, j3 + j1 + j6 + j4]
    total = Fraction(0)
    t = max(a)
    while t <= min(b):
        denominator = 1
        for x in a:
            denominator *= _factorial(t - x)
        for x in b:
            denominator *= _factorial(x - t)
        total += Fraction((-1) ** int(t) * _factorial(t + 1), denominator)
        t += 1
    squared = Fraction(1)
    for triad in triads:
        squared *= _exact_delta(*triad)
    return float(total) * math.sqrt(squared)


def clebsch_gordan_1(j1, m1, q, j, m) -> float:
    """
    Tabulated <j1 m1; 1 q | j m> (Condon-Shortley phase)
    """
    j1, m1, j, m = (Fraction(v) for v in (j1, m1, j, m))
    if m1 + q != m or abs(m) > j or abs(m1) > j1:
        return 0.0
    if j == j1 + 1:
        table = {
            1: (j1 + m) * (j1 + m + 1) / ((2 * j1 + 1) * (2 * j1 + 2)),
            0: (j1 - m + 1) * (j1 + m + 1) / ((2 * j1 + 1) * (j1 + 1)),
            -1: (j1 - m) * (j1 - m + 1) / ((2 * j1 + 1) * (2 * j1 + 2)),
        }
        return math.sqrt(table[q])
    if j == j1:
        if j1 == 0:
            return 0.0
        if q == 0:
            return float(m) / math.sqrt(j1 * (j1 + 1))
        if q == 1:
            return -math.sqrt((j1 + m) * (j1 - m + 1) / (2 * j1 * (j1 + 1)))
        return math.sqrt((j1 - m) * (j1 + m + 1) / (2 * j1 * (j1 + 1)))
    if j == j1 - 1:
        if q == 1:
            return math.sqrt((j1 - m) * (j1 - m + 1) / (2 * j1 * (2 * j1 + 1)))
        if q == 0:
            return -math.sqrt((j1 - m) * (j1 + m) / (j1 * (2 * j1 + 1)))
        return math.sqrt((j1 + m + 1) * (j1 + m) / (2 * j1 * (2 * j1 + 1)))
    return 0.0


def reference_dipole(g, i, q, line) -> float:
    """
    <g|d_q|i> from the tabulated Clebsch-Gordan coefficients and exact 6j
    """
    I = Fraction(line.nuclear_spin_x2, 2)
    J_g, J_i = Fraction(g.J_x2, 2), Fraction(i.J_x2, 2)
    F_g, F_i = Fraction(g.F_x2, 2), Fraction(i.F_x2, 2)
    m_g, m_i = Fraction(g.mF_x2, 2), Fraction(i.mF_x2, 2)
    f_reduced = (
        line.reduced_dipole
        * (-1) ** int(F_i + J_g + 1 + I)
        * math.sqrt((2 * F_i + 1) * (2 * J_g + 1))
        * exact_wigner6j(J_g, J_i, 1, F_i, F_g, I)
    )
    return f_reduced * clebsch_gordan_1(F_i, m_i, -q, F_g, m_g)


def direct_green_real(Z, omega):
    """
    (Gxx, Gzz) of the perfect mirror evaluated literally with complex k
    """
    k = omega / SPEED_OF_LIGHT
    return _direct_green(Z, k)


def continued_green(Z, u):
    """
    Real-axis formula continued to omega = iu
    """
    return _direct_green(Z, 1j * u / SPEED_OF_LIGHT)


def _direct_green(Z, k):
    phase = cmath.exp(2j * k * Z)
    gxx = -phase * (1 - 2j * k * Z - 4 * k ** 2 * Z ** 2) / (
        32 * math.pi * k ** 2 * Z ** 3
    )
    gzz = phase * (-1 + 2j * k * Z) / (16 * math.pi * k ** 2 * Z ** 3)
    return gxx, gzz


def cartesian_contraction(g, e, i, G, line, dipole) -> complex:
    """
    Tr{<g|d|i> G <i|d|e>} with Cartesian dipole vectors and a 3x3 dyadic
    """

    def cartesian(state):
        d = {q: dipole(state, i, q, line) for q in (-1, 0, 1)}
        return np.array(
            [
                d[0],
                (d[-1] - d[1]) / math.sqrt(2),
                1j * (d[-1] + d[1]) / math.sqrt(2),
            ],
            dtype=complex,
        )

    dyadic = np.diag([G.Gxx, G.Gyy, G.Gzz]).astype(complex)
    return complex(np.einsum("k,kl,l", cartesian(g), dyadic, cartesian(e).conj()))


def trapezoid(f, upper, points):
    u = np.linspace(0.0, upper, points)
    return float(np.trapz(f(u), u))
