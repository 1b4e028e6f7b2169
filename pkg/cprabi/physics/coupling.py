"""
Casimir-Polder level shifts and couplings of lower-manifold sublevels.

Energies are in joules, frequencies in rad/s. The pair energy is given as
an angular frequency measured from the lower fine-structure reference level
(pair_energy = E / hbar).
"""
import cmath
import math
from typing import Dict, List, NamedTuple, Optional, Tuple

from scipy.constants import c as SPEED_OF_LIGHT
from scipy.constants import epsilon_0, hbar

from cprabi.core.config import app_config
from cprabi.core.exceptions import PreconditionError, StateMismatchError
from cprabi.core.log import getLogger
from cprabi.core.quadrature import QuadratureResult, integrate_semiinfinite
from cprabi.model.atom import HyperfineState, SpeciesData
from cprabi.model.rates import ComplexRate, CouplingShifts, RabiParams

from .dipole import DipoleProducts, dipole_products
from .green import ScatteringGreen, contract, perfect_mirror

logger = getLogger()

# Normalization of the field correlation entering both shift components.
# Fixed so the full expressions reproduce the leading-order hyperfine formula.
FIELD_NORMALIZATION = 2.0

# Relative size below which a sum of channel dipole products is exactly zero
CANCELLATION_THRESHOLD = 1e-12

# Smallest dimensionless imaginary frequency uZ/c evaluated by the integrand
IMAGINARY_AXIS_FLOOR = 1e-12


class Channel(NamedTuple):
    # (n, L, J_x2) of the intermediate manifold
    manifold: Tuple[int, int, int]
    # omega_i - pair_energy (rad/s)
    frequency: float
    products: DipoleProducts


def pair_energy_of(a: HyperfineState, b: HyperfineState) -> float:
    """(E_a + E_b) / 2 as angular frequency"""
    return (a.energy_offset + b.energy_offset) / 2


def _check_lower(species: SpeciesData, *states: HyperfineState):
    for state in states:
        if state.manifold != species.lower_manifold:
            raise StateMismatchError(
                f"State {state} doesn't belong to the lower manifold of species"
            )


def _check_distance(Z: float):
    if not (Z > 0 and math.isfinite(Z)):
        raise ValueError(f"Distance must be positive and finite, got {Z}")


def _snapped(terms: List[float]) -> float:
    total = math.fsum(terms)
    if abs(total) <= CANCELLATION_THRESHOLD * sum(abs(t) for t in terms):
        return 0.0
    return total


def coupling_channels(
    a: HyperfineState, b: HyperfineState, species: SpeciesData, pair_energy: float
) -> List[Channel]:
    """
    Groups intermediate states by their frequency omega_i - pair_energy and
    sums the dipole products within each group. Groups whose products
    cancel are dropped.
    """
    _check_lower(species, a, b)
    groups: Dict[Tuple, List[DipoleProducts]] = {}
    for line, state in species.intermediate_states():
        products = dipole_products(a, b, state, line)
        if not any(products):
            continue
        frequency = line.frequency(state.F_x2) - pair_energy
        groups.setdefault((line.manifold, frequency), []).append(products)

    channels = []
    for manifold, frequency in sorted(groups):
        summed = _summed_products(groups[(manifold, frequency)])
        if any(summed):
            channels.append(
                Channel(manifold=manifold, frequency=frequency, products=summed)
            )
    return channels


def _summed_products(items: List[DipoleProducts]) -> DipoleProducts:
    return DipoleProducts(
        *(
            _snapped([getattr(p, name) for p in items])
            for name in DipoleProducts._fields
        )
    )


class _ManifoldTerms(NamedTuple):
    reference: float
    # Products summed over all channels of the manifold
    total: DipoleProducts
    # (frequency, products) of each channel
    channels: List[Tuple[float, DipoleProducts]]


def _manifold_terms(channels: List[Channel]) -> List[_ManifoldTerms]:
    """
    Splits channel sums of each manifold into a term at the reference
    frequency and differences from it. Hyperfine channels of one manifold
    nearly cancel and the differences keep that cancellation exact.
    """
    by_manifold: Dict[Tuple, List[Channel]] = {}
    for channel in channels:
        by_manifold.setdefault(channel.manifold, []).append(channel)
    terms = []
    for manifold_channels in by_manifold.values():
        terms.append(
            _ManifoldTerms(
                reference=manifold_channels[0].frequency,
                total=_summed_products([ch.products for ch in manifold_channels]),
                channels=[
                    (ch.frequency, ch.products) for ch in manifold_channels[1:]
                ],
            )
        )
    return terms


def _weight(u2: float, frequency: float) -> float:
    # u^2 w / (u^2 + w^2)
    return u2 * frequency / (u2 + frequency * frequency)


def _weight_difference(u2: float, frequency: float, reference: float) -> float:
    # _weight(u2, frequency) - _weight(u2, reference) without cancellation
    return (
        u2
        * (frequency - reference)
        * (u2 - frequency * reference)
        / ((u2 + frequency * frequency) * (u2 + reference * reference))
    )


def offresonant_shift(
    a: HyperfineState,
    b: HyperfineState,
    species: SpeciesData,
    Z: float,
    pair_energy: Optional[float] = None,
    *,
    mirror: ScatteringGreen = perfect_mirror,
    rel_tol: Optional[float] = None,
    full_output: bool = False,
):
    """
    Off-resonant shift element dE_ab (J), imaginary-frequency integral over
    all intermediate sublevels of the species.

    a == b gives the additive level shift, a != b the non-additive coupling.

    :param pair_energy: pair energy as angular frequency,
                        by default (E_a + E_b) / 2
    :param full_output: return QuadratureResult scaled to joules
    :raises QuadratureError: integration failure
    """
    _check_distance(Z)
    if pair_energy is None:
        pair_energy = pair_energy_of(a, b)
    if rel_tol is None:
        rel_tol = app_config.cprabi.tolerance

    channels = [
        channel
        for channel in coupling_channels(a, b, species, pair_energy)
        if channel.frequency != 0
    ]
    if not channels:
        result = QuadratureResult(value=0.0, abs_error_estimate=0.0, evaluations=0)
        return result if full_output else result.value

    terms = _manifold_terms(channels)
    # Integration variable x = uZ/c
    scale = SPEED_OF_LIGHT / Z

    def integrand(x):
        u = max(x, IMAGINARY_AXIS_FLOOR) * scale
        u2 = u * u
        G = mirror.imag(Z, u)
        total = 0.0
        for reference, products, differences in terms:
            if any(products):
                total += _weight(u2, reference) * contract(products, G).real
            for frequency, channel_products in differences:
                total += (
                    _weight_difference(u2, frequency, reference)
                    * contract(channel_products, G).real
                )
        return total * scale

    quadrature = integrate_semiinfinite(
        integrand,
        decay_scale=1.0,
        rel_tol=rel_tol,
        points=[abs(channel.frequency) / scale for channel in channels],
        limit=app_config.cprabi.max_subdivisions,
    )
    prefactor = -FIELD_NORMALIZATION / (math.pi * epsilon_0 * SPEED_OF_LIGHT ** 2)
    logger.debug(
        "Off-resonant shift computed",
        extra={"channels": len(channels), "evaluations": quadrature.evaluations},
    )
    result = QuadratureResult(
        value=prefactor * quadrature.value,
        abs_error_estimate=abs(prefactor) * quadrature.abs_error_estimate,
        evaluations=quadrature.evaluations,
    )
    return result if full_output else result.value


def resonant_shift(
    a: HyperfineState,
    b: HyperfineState,
    species: SpeciesData,
    Z: float,
    pair_energy: Optional[float] = None,
    *,
    mirror: ScatteringGreen = perfect_mirror,
) -> float:
    """
    Resonant shift element dE_ab (J) from intermediate sublevels lying
    below the pair energy. Zero when every intermediate level is above it.
    """
    _check_distance(Z)
    _check_lower(species, a, b)
    if pair_energy is None:
        pair_energy = pair_energy_of(a, b)

    total = 0.0
    for line, state in species.intermediate_states():
        frequency = pair_energy - line.frequency(state.F_x2)
        if frequency <= 0:
            continue
        products = dipole_products(a, b, state, line)
        if not any(products):
            continue
        G = mirror.real(Z, frequency).real_part()
        total += frequency * frequency * contract(products, G).real
    return FIELD_NORMALIZATION * total / (epsilon_0 * SPEED_OF_LIGHT ** 2)


def _leading_integrand(kappa: float):
    kappa2 = kappa * kappa

    def integrand(u):
        f = math.exp(-2 * u) * (1 + 2 * u - 4 * u * u)
        denominator = u * u + kappa2
        return f / (denominator * kappa2) - 2 * f / (denominator * denominator)

    return integrand


def nonadditive_leading(
    species: SpeciesData, Z: float, *, rel_tol: Optional[float] = None
) -> float:
    """
    Non-additive shift dE_eg (J) of the |F=1, mF=-1>, |F=1, mF=+1> pair at
    leading order in the hyperfine intervals of the upper manifolds.

    Valid for a J=1/2 lower manifold with nuclear spin 3/2 (87Rb-like
    D lines). Intervals are measured from the F=1 level of each line.
    """
    _check_distance(Z)
    if species.nuclear_spin_x2 != 3 or species.lower_J_x2 != 1:
        raise PreconditionError(
            "Leading-order formula requires nuclear spin 3/2 and J=1/2 "
            "lower manifold"
        )
    if rel_tol is None:
        rel_tol = app_config.cprabi.tolerance

    total = 0.0
    for line in species.lines:
        if line.below or line.upper_J_x2 not in (1, 3):
            raise PreconditionError(
                f"Line to {line.manifold} manifold is not a D line "
                "of the leading-order formula"
            )
        reference = line.frequency(2)
        kappa = reference * Z / SPEED_OF_LIGHT
        if not kappa > 0:
            raise PreconditionError(f"kappa must be positive, got {kappa}")
        # F levels reachable from F=1 by a single dipole transition
        intervals = [
            (F_x2, interval)
            for F_x2, interval in sorted(line.hyperfine_intervals.items())
            if abs(F_x2 - 2) <= 2 and interval != 0
        ]
        if not intervals:
            continue
        integral = integrate_semiinfinite(
            _leading_integrand(kappa),
            decay_scale=1.0,
            rel_tol=rel_tol,
            points=[kappa],
            limit=app_config.cprabi.max_subdivisions,
        )
        j_minus_half = (line.upper_J_x2 - 1) / 2
        for F_x2, interval in intervals:
            weight = 2.0 ** (j_minus_half * (F_x2 - 2) / 2)
            prefactor = (line.reduced_dipole * reference) ** 2 / (
                weight * 384 * math.pi ** 2 * SPEED_OF_LIGHT ** 3 * epsilon_0
            )
            total -= prefactor * interval * integral.value
    return total


def _is_mirror_pair(g: HyperfineState, e: HyperfineState) -> bool:
    return (
        g.manifold == e.manifold
        and g.F_x2 == e.F_x2
        and g.mF_x2 == -e.mF_x2
        and g.energy_offset == e.energy_offset
    )


def coupling_shifts(
    g: HyperfineState,
    e: HyperfineState,
    species: SpeciesData,
    Z: float,
    *,
    damping_gg: float = 0.0,
    damping_ee: Optional[float] = None,
    damping_ge: float = 0.0,
    damping_eg: float = 0.0,
    mirror: ScatteringGreen = perfect_mirror,
    rel_tol: Optional[float] = None,
) -> CouplingShifts:
    """
    All four shift elements (off-resonant + resonant) of the g, e pair
    at their common pair energy. Dampings are supplied by the caller;
    damping_ee defaults to damping_gg.
    """
    if damping_ee is None:
        damping_ee = damping_gg
    if damping_gg < 0 or damping_ee < 0:
        raise PreconditionError("Diagonal damping rates must be non-negative")
    pair_energy = pair_energy_of(g, e)

    def shift(a, b):
        return offresonant_shift(
            a, b, species, Z, pair_energy, mirror=mirror, rel_tol=rel_tol
        ) + resonant_shift(a, b, species, Z, pair_energy, mirror=mirror)

    shift_gg = shift(g, g)
    # Sublevels mirrored by mF -> -mF have equal additive shifts
    shift_ee = shift_gg if _is_mirror_pair(g, e) else shift(e, e)
    return CouplingShifts(
        gg=ComplexRate(shift=shift_gg, damping=damping_gg),
        ee=ComplexRate(shift=shift_ee, damping=damping_ee),
        ge=ComplexRate(shift=shift(g, e), damping=damping_ge),
        eg=ComplexRate(shift=shift(e, g), damping=damping_eg),
    )


def rabi_params(
    shifts: CouplingShifts, omega_g: float = 0.0, omega_e: float = 0.0
) -> RabiParams:
    """
    Assembles complex frequencies of the effective two-state Hamiltonian.
    Omega_R is the principal square root of Omega * Omega_star + delta^2,
    positive real in the dissipationless limit.
    """
    omega_g_tilde = omega_g + shifts.gg.complex_energy / hbar
    omega_e_tilde = omega_e + shifts.ee.complex_energy / hbar
    delta_tilde = omega_e_tilde - omega_g_tilde
    Omega = 2 * shifts.ge.complex_energy / hbar
    Omega_star = 2 * shifts.eg.complex_energy / hbar
    return RabiParams(
        omega_g_tilde=omega_g_tilde,
        omega_e_tilde=omega_e_tilde,
        delta_tilde=delta_tilde,
        Omega=Omega,
        Omega_star=Omega_star,
        Omega_R=cmath.sqrt(Omega * Omega_star + delta_tilde * delta_tilde),
    )

