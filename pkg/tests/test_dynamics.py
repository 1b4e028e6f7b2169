import math

import numpy as np
import pytest
from scipy.linalg import expm

from cprabi.core.exceptions import PreconditionError, UnanchoredDistanceError
from cprabi.model.rates import RabiParams
from cprabi.physics.dynamics import (
    anchored_damping,
    angular_momentum_x,
    evolve,
    feasibility_window,
    populations,
    spin_projections,
    spin_trajectory,
)
from cprabi.schema.species import load_species

from .utils import rb87_document


def make_params(omega_g, omega_e, Omega, Omega_star):
    delta = omega_e - omega_g
    return RabiParams(
        omega_g_tilde=omega_g,
        omega_e_tilde=omega_e,
        delta_tilde=delta,
        Omega=Omega,
        Omega_star=Omega_star,
        Omega_R=np.lib.scimath.sqrt(Omega * Omega_star + delta * delta),
    )


def resonant_params(Omega=2.0, shift=0.5):
    return make_params(
        complex(shift), complex(shift), complex(Omega), complex(Omega)
    )


def random_params(rng):
    def rand_complex(scale, damping):
        return complex(rng.uniform(-scale, scale), -rng.uniform(0, damping))

    return make_params(
        rand_complex(3.0, 1.0),
        rand_complex(3.0, 1.0),
        rand_complex(2.0, 0.5),
        rand_complex(2.0, 0.5),
    )


def test_identity_at_zero():
    op = evolve(resonant_params(), 0.0)
    assert np.allclose(op.as_matrix(), np.eye(2), atol=1e-15)


def test_matrix_exponential_oracle():
    rng = np.random.RandomState(2024)
    for _ in range(1000):
        params = random_params(rng)
        T = rng.uniform(0.0, 3.0)
        expected = expm(-1j * params.hamiltonian() * T)
        assert np.allclose(evolve(params, T).as_matrix(), expected, rtol=0, atol=1e-10)


def test_small_rotation_series():
    # Omega_R = 0: exceptional point of the non-Hermitian generator
    params = make_params(0.3 - 0.1j, 0.3 - 0.1j, 1e-9 + 0j, 0j)
    for T in (0.0, 1e-3, 1.0, 5.0):
        expected = expm(-1j * params.hamiltonian() * T)
        assert np.allclose(evolve(params, T).as_matrix(), expected, rtol=0, atol=1e-12)


def test_unitarity_without_damping():
    rng = np.random.RandomState(5)
    for _ in range(200):
        w_g, w_e, omega = rng.uniform(-3, 3, size=3)
        params = make_params(complex(w_g), complex(w_e), complex(omega), complex(omega))
        U = evolve(params, rng.uniform(0, 10)).as_matrix()
        assert np.allclose(U.conj().T @ U, np.eye(2), rtol=0, atol=1e-12)
        assert abs(abs(np.linalg.det(U)) - 1) < 1e-12


def test_composition():
    rng = np.random.RandomState(11)
    for _ in range(200):
        params = random_params(rng)
        T1, T2 = rng.uniform(0, 2, size=2)
        composed = evolve(params, T2).as_matrix() @ evolve(params, T1).as_matrix()
        assert np.allclose(
            evolve(params, T1 + T2).as_matrix(), composed, rtol=0, atol=1e-10
        )


def test_resonant_half_cycle():
    params = resonant_params(Omega=2.0)
    op = evolve(params, math.pi / params.Omega_R.real)
    assert abs(op.ugg) < 1e-12
    assert abs(op.uee) < 1e-12
    assert abs(abs(op.uge) - 1) < 1e-12
    assert abs(abs(op.ueg) - 1) < 1e-12


def test_rabi_formula():
    params = resonant_params(Omega=1.3)
    for T in np.linspace(0, 10, 50):
        P_g, P_e = populations(evolve(params, T), 1.0, 0.0)
        assert P_e == pytest.approx(math.sin(1.3 * T / 2) ** 2, abs=1e-12)
        assert P_g + P_e == pytest.approx(1.0, abs=1e-12)


def test_populations_with_damping():
    gamma = 0.4
    params = make_params(0.2 - 0.2j, 0.2 - 0.2j, 1.5 + 0j, 1.5 + 0j)
    for T in np.linspace(0, 8, 30):
        P_g, P_e = populations(evolve(params, T), 1 / math.sqrt(2), 1j / math.sqrt(2))
        assert P_g + P_e == pytest.approx(math.exp(-gamma * T), abs=1e-9)


def test_populations_bounded():
    rng = np.random.RandomState(3)
    for _ in range(200):
        params = random_params(rng)
        phase = np.exp(1j * rng.uniform(0, 2 * math.pi))
        theta = rng.uniform(0, math.pi)
        for T in (0.1, 1.0, 4.0):
            P_g, P_e = populations(
                evolve(params, T), math.cos(theta), phase * math.sin(theta)
            )
            assert 0 <= P_g and 0 <= P_e
            assert P_g + P_e <= 1 + 1e-12 or not _contractive(params)


def _contractive(params):
    # Anti-Hermitian part of H is negative semi-definite
    H = params.hamiltonian()
    return np.all(np.linalg.eigvalsh((H - H.conj().T) / 2j) <= 1e-12)


def test_unnormalized_state_rejected():
    op = evolve(resonant_params(), 1.0)
    with pytest.raises(PreconditionError):
        populations(op, 1.0, 0.1)
    with pytest.raises(PreconditionError):
        populations(op, 0.5, 0.5)


def test_negative_duration():
    with pytest.raises(ValueError):
        evolve(resonant_params(), -1.0)


def test_angular_momentum_trajectory():
    params = resonant_params(Omega=0.7)
    Omega_R = params.Omega_R.real
    assert angular_momentum_x(params, 0.0) == -1.0
    half_cycle = math.pi / Omega_R
    assert angular_momentum_x(params, half_cycle) == pytest.approx(1.0, abs=1e-12)
    for t in np.linspace(0, 4 * math.pi / Omega_R, 100):
        P_g, P_e = populations(evolve(params, t))
        assert angular_momentum_x(params, t) == pytest.approx(P_e - P_g, abs=1e-12)


def test_angular_momentum_preconditions():
    with pytest.raises(PreconditionError):
        angular_momentum_x(make_params(0.5 - 0.1j, 0.5 - 0.1j, 2 + 0j, 2 + 0j), 1.0)
    with pytest.raises(PreconditionError):
        angular_momentum_x(make_params(0.5 + 0j, 0.7 + 0j, 2 + 0j, 2 + 0j), 1.0)
    with pytest.raises(PreconditionError):
        angular_momentum_x(make_params(0.5 + 0j, 0.5 + 0j, 2 + 0j, 3 + 0j), 1.0)


def test_anchored_damping_values():
    assert anchored_damping(40e-9, 40e-9) == pytest.approx(20 * math.pi, rel=1e-9)
    assert anchored_damping(270e-9, 270e-9) == pytest.approx(
        0.065 * math.pi, rel=1e-9
    )
    assert anchored_damping(3e-6, 40e-9) == pytest.approx(
        20 * math.pi * (40 / 3000) ** 2, rel=1e-9
    )
    # Log-log interpolation is monotone between anchors
    values = [anchored_damping(1e-6, z) for z in np.linspace(40e-9, 270e-9, 20)]
    assert all(a > b for a, b in zip(values, values[1:]))


def test_feasibility_window():
    result = feasibility_window(3e-6, 40e-9, 2 * math.pi * 1.0)
    assert result.feasible
    assert result.gamma == pytest.approx(20 * math.pi * (40 / 3000) ** 2, rel=1e-9)
    assert result.ratio == pytest.approx(result.gamma / (2 * math.pi))

    assert feasibility_window(3e-6, 270e-9, 2 * math.pi * 1e-3).feasible
    assert not feasibility_window(50e-9, 40e-9, 2 * math.pi * 1.0).feasible
    assert not feasibility_window(1e-12, 100e-9, 2 * math.pi * 1.0).feasible


def test_feasibility_errors():
    with pytest.raises(UnanchoredDistanceError):
        feasibility_window(3e-6, 30e-9, 1.0)
    with pytest.raises(UnanchoredDistanceError):
        feasibility_window(3e-6, 300e-9, 1.0)
    with pytest.raises(ValueError):
        feasibility_window(0.0, 100e-9, 1.0)


@pytest.fixture(scope="module")
def species():
    return load_species(rb87_document())


def test_spin_projections(species):
    g, e = species.degenerate_pair()
    assert spin_projections(g, species) == (0.25, -1.25)
    assert spin_projections(e, species) == (-0.25, 1.25)
    # Stretched state: both spins fully aligned
    assert spin_projections(species.lower_state(4, 4), species) == (0.5, 1.5)
    assert spin_projections(species.lower_state(2, 0), species) == (0.0, 0.0)
    for F_x2 in (2, 4):
        for mF_x2 in range(-F_x2, F_x2 + 1, 2):
            electronic, nuclear = spin_projections(
                species.lower_state(F_x2, mF_x2), species
            )
            assert electronic + nuclear == mF_x2 / 2
            assert abs(electronic) <= 0.5


def test_spin_trajectory_endpoints(species):
    g, e = species.degenerate_pair()
    params = resonant_params(Omega=0.9)
    half_cycle = math.pi / params.Omega_R.real
    start = spin_trajectory(params, 0.0, g, e, species)
    assert start == (0.25, -1.25)
    end = spin_trajectory(params, half_cycle, g, e, species)
    assert end.electronic == pytest.approx(-0.25, abs=1e-12)
    assert end.nuclear == pytest.approx(1.25, abs=1e-12)
    for t in np.linspace(0, 2 * half_cycle, 50):
        spins = spin_trajectory(params, t, g, e, species)
        assert spins.electronic + spins.nuclear == pytest.approx(
            angular_momentum_x(params, t), abs=1e-12
        )


def test_spin_trajectory_requires_distinct_projections(species):
    g, _ = species.degenerate_pair()
    with pytest.raises(PreconditionError):
        spin_trajectory(resonant_params(), 1.0, g, g, species)
