"""
Two-state dynamics driven by the Casimir-Polder coupling.
"""
import cmath
import math
from typing import NamedTuple, Tuple

import numpy as np

from cprabi.core.exceptions import PreconditionError, UnanchoredDistanceError
from cprabi.model.atom import HyperfineState, SpeciesData
from cprabi.model.rates import EvolutionOperator, RabiParams

# Below this |Omega_R T| the sin(x)/x factor is replaced by its Taylor series
SMALL_ROTATION = 1e-6

NORMALIZATION_TOLERANCE = 1e-9

# (Z in m, Gamma * xi^2 in m^2/s) for the magnetic-dipole damping of the
# diagonal elements near a conductor with skin depth xi
DAMPING_ANCHORS = (
    (40e-9, 20 * math.pi * 40e-9 ** 2),
    (270e-9, 0.065 * math.pi * 270e-9 ** 2),
)
ANCHOR_TOLERANCE = 1e-9


def evolve(params: RabiParams, T: float) -> EvolutionOperator:
    """
    Propagator exp(-i H T) of the effective non-Hermitian Hamiltonian
    H = [[w_g, Omega/2], [Omega*/2, w_e]] (see RabiParams).
    """
    if T < 0:
        raise ValueError(f"Duration must be non-negative, got {T}")
    sigma = (params.omega_g_tilde + params.omega_e_tilde) / 2
    half_angle = params.Omega_R * T / 2
    if abs(params.Omega_R * T) < SMALL_ROTATION:
        sine_ratio = (T / 2) * (1 - half_angle * half_angle / 6)
    else:
        sine_ratio = cmath.sin(half_angle) / params.Omega_R
    cosine = cmath.cos(half_angle)
    phase = cmath.exp(-1j * sigma * T)
    return EvolutionOperator(
        ugg=phase * (cosine + 1j * params.delta_tilde * sine_ratio),
        uge=-1j * params.Omega * sine_ratio * phase,
        ueg=-1j * params.Omega_star * sine_ratio * phase,
        uee=phase * (cosine - 1j * params.delta_tilde * sine_ratio),
        T=T,
    )


def populations(
    op: EvolutionOperator, a_g0: complex = 1.0, a_e0: complex = 0.0
) -> Tuple[float, float]:
    """
    Populations (P_g, P_e) after op applied to a_g0|g> + a_e0|e>
    """
    norm = abs(a_g0) ** 2 + abs(a_e0) ** 2
    if abs(norm - 1) > NORMALIZATION_TOLERANCE:
        raise PreconditionError(f"Initial state is not normalized (norm {norm})")
    a_g, a_e = op.apply(a_g0, a_e0)
    return abs(a_g) ** 2, abs(a_e) ** 2


def angular_momentum_x(params: RabiParams, t: float) -> float:
    """
    Angular momentum along the quantization axis (units of hbar) of the
    atom started in |g> (mF=-1). Defined for coherent resonant evolution only.
    """
    if not params.is_dissipationless:
        raise PreconditionError("Angular momentum trajectory requires zero damping")
    if params.delta_tilde != 0:
        raise PreconditionError(
            "Angular momentum trajectory requires degenerate shifted levels"
        )
    if params.Omega != params.Omega_star:
        raise PreconditionError("Angular momentum trajectory requires Omega = Omega*")
    return -math.cos(params.Omega_R.real * t)


def _anchor_product(Z: float) -> float:
    (z1, p1), (z2, p2) = DAMPING_ANCHORS
    if not (z1 * (1 - ANCHOR_TOLERANCE) <= Z <= z2 * (1 + ANCHOR_TOLERANCE)):
        raise UnanchoredDistanceError(
            f"Damping estimate is anchored between {z1 * 1e9:g} and "
            f"{z2 * 1e9:g} nm, got Z={Z * 1e9:g} nm"
        )
    return float(
        np.exp(np.interp(np.log(Z), [np.log(z1), np.log(z2)], [np.log(p1), np.log(p2)]))
    )


def anchored_damping(xi: float, Z: float) -> float:
    """
    Estimated damping rate Gamma_gg = Gamma_ee (1/s) from the magnetic-dipole
    anchors, interpolated log-log in Z and scaled as 1/xi^2.

    :param xi: skin depth of the surface material (m)
    :raises UnanchoredDistanceError: Z outside the anchored range
    """
    if not xi > 0:
        raise ValueError(f"Skin depth must be positive, got {xi}")
    return _anchor_product(Z) / (xi * xi)


class Feasibility(NamedTuple):
    feasible: bool
    # Estimated damping rate (1/s)
    gamma: float
    # gamma / Omega_R, feasible below 1
    ratio: float


def feasibility_window(xi: float, Z: float, omega_R: float) -> Feasibility:
    """
    Checks whether a Rabi cycle completes before the levels decay (Gamma < Omega_R)
    """
    gamma = anchored_damping(xi, Z)
    omega_R = abs(omega_R)
    ratio = gamma / omega_R if omega_R > 0 else math.inf
    return Feasibility(feasible=gamma < omega_R, gamma=gamma, ratio=ratio)


class SpinProjections(NamedTuple):
    # <J_x> and <I_x> along the quantization axis (units of hbar)
    electronic: float
    nuclear: float


def spin_projections(
    state: HyperfineState, species: SpeciesData
) -> SpinProjections:
    """
    Electronic and nuclear spin projections of a hyperfine sublevel
    from the projection theorem:

        <J_x> = mF [F(F+1) + J(J+1) - I(I+1)] / 2F(F+1),  <I_x> = mF - <J_x>
    """
    if state.F_x2 == 0:
        return SpinProjections(electronic=0.0, nuclear=0.0)
    F2 = state.F_x2 * (state.F_x2 + 2)
    J2 = state.J_x2 * (state.J_x2 + 2)
    I2 = species.nuclear_spin_x2 * (species.nuclear_spin_x2 + 2)
    m_F = state.mF_x2 / 2
    electronic = m_F * (F2 + J2 - I2) / (2 * F2)
    return SpinProjections(electronic=electronic, nuclear=m_F - electronic)


def spin_trajectory(
    params: RabiParams,
    t: float,
    g: HyperfineState,
    e: HyperfineState,
    species: SpeciesData,
) -> SpinProjections:
    """
    Spin projections of the atom started in |g>, weighted by the populations
    of |g> and |e> at time t. The pair differs in mF, so J_x and I_x have no
    matrix elements between its states.
    """
    if g.mF_x2 == e.mF_x2:
        raise PreconditionError("Spin trajectory requires states with different mF")
    P_g, P_e = populations(evolve(params, t))
    at_g = spin_projections(g, species)
    at_e = spin_projections(e, species)
    return SpinProjections(
        electronic=P_g * at_g.electronic + P_e * at_e.electronic,
        nuclear=P_g * at_g.nuclear + P_e * at_e.nuclear,
    )
