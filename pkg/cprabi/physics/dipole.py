"""
Hyperfine-resolved spherical dipole matrix elements.

Matrix elements are reduced first with respect to F (Wigner-Eckart) and then
with respect to J (decoupling of the nuclear spin). The spherical component
q is chosen so that <lower, mF|d_q|upper, mF'> is non-zero only for
mF' = mF + q.
"""
from typing import List, NamedTuple, Tuple

from cprabi.core.exceptions import StateMismatchError
from cprabi.model.atom import HyperfineState, SpeciesData, TransitionLine

from .angular import doubled, wigner3j_doubled, wigner6j_doubled

SPHERICAL_COMPONENTS = (-1, 0, 1)


def _phase(x2: int) -> float:
    # (-1)^(x2/2) for even doubled exponent
    return -1.0 if (x2 // 2) % 2 else 1.0


def _check_states(g: HyperfineState, i: HyperfineState, line: TransitionLine):
    if not line.contains(i):
        raise StateMismatchError(
            f"Intermediate state {i} doesn't belong to the selected line"
        )
    if g.manifold == line.manifold:
        raise StateMismatchError(
            f"State {g} belongs to the upper manifold of the selected line"
        )
    if line.lower_manifold is not None and g.manifold != line.lower_manifold:
        raise StateMismatchError(
            f"State {g} doesn't belong to the lower manifold of the selected line"
        )
    if abs(g.J_x2 - line.upper_J_x2) > 2 or abs(g.L - line.L) != 1:
        raise StateMismatchError(
            f"State {g} is not dipole-coupled to J={line.upper_J_x2}/2 manifold"
        )


def hyperfine_dipole(
    g: HyperfineState, i: HyperfineState, q: int, line: TransitionLine
) -> float:
    """
    Spherical dipole matrix element <g|d_q|i> in C*m.

    :param g: state of the lower manifold
    :param i: intermediate state of the line manifold
    :param q: spherical component, one of -1, 0, +1
    :param line: line carrying reduced matrix element and nuclear spin
    :raises StateMismatchError: states don't belong to the line
    """
    if q not in SPHERICAL_COMPONENTS:
        raise ValueError(f"Spherical component must be -1, 0 or +1, got {q}")
    _check_states(g, i, line)

    if i.mF_x2 != g.mF_x2 + 2 * q:
        return 0.0
    if (i.F_x2 - g.F_x2) % 2 or abs(i.F_x2 - g.F_x2) > 2:
        return 0.0

    I_x2 = line.nuclear_spin_x2
    J_g, J_i = g.J_x2, line.upper_J_x2
    F_g, F_i = g.F_x2, i.F_x2

    # <F_g||d||F_i> in terms of <J_g||d||J_i>
    f_reduced = (
        line.reduced_dipole
        * _phase(F_i + J_g + 2 + I_x2)
        * ((F_i + 1) * (J_g + 1)) ** 0.5
        * wigner6j_doubled(J_g, J_i, 2, F_i, F_g, I_x2)
    )
    if f_reduced == 0.0:
        return 0.0
    return (
        f_reduced
        * _phase(F_i - 2 + g.mF_x2)
        * (F_g + 1) ** 0.5
        * wigner3j_doubled(F_i, 2, F_g, i.mF_x2, -2 * q, -g.mF_x2)
    )


class DipoleProducts(NamedTuple):
    """
    Dipole products entering the contraction with a diagonal Green tensor.
    A_q = <g|d_q|i>, B_q = <e|d_q|i>
    """

    # A_0 B_0
    longitudinal: float
    # A_+ B_- + A_- B_+
    crossed: float
    # A_+ B_+ + A_- B_-
    parallel: float


def dipole_products(
    g: HyperfineState, e: HyperfineState, i: HyperfineState, line: TransitionLine
) -> DipoleProducts:
    a = {q: hyperfine_dipole(g, i, q, line) for q in SPHERICAL_COMPONENTS}
    b = {q: hyperfine_dipole(e, i, q, line) for q in SPHERICAL_COMPONENTS}
    return DipoleProducts(
        longitudinal=a[0] * b[0],
        crossed=a[1] * b[-1] + a[-1] * b[1],
        parallel=a[1] * b[1] + a[-1] * b[-1],
    )


def selection_rule_terms(j, species: SpeciesData) -> List[Tuple[int, float]]:
    """
    Per-F terms <e|d_-|j,F,0><g|d_+|j,F,0> for the degenerate
    pair |g>=|F=1,mF=-1>, |e>=|F=1,mF=+1> and the line with upper J=j.

    :return: list of (doubled F, product) pairs
    """
    line = species.line(doubled(j))
    g, e = species.degenerate_pair()
    terms = []
    for F_x2 in sorted(line.hyperfine_intervals):
        if F_x2 % 2:
            continue
        i = line.state(F_x2, 0)
        terms.append(
            (F_x2, hyperfine_dipole(e, i, -1, line) * hyperfine_dipole(g, i, 1, line))
        )
    return terms


def selection_rule_sum(j, species: SpeciesData) -> float:
    """
    Sum over F of <e|d_-|j,F,0><g|d_+|j,F,0>.
    Vanishes for every j since |mF(e) - mF(g)| = 2 can't be bridged by
    a single-photon transition through a complete F set.
    """
    return sum(product for _, product in selection_rule_terms(j, species))
