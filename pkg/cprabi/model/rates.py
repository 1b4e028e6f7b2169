from dataclasses import dataclass

import numpy as np
from scipy.constants import hbar


@dataclass(frozen=True)
class ComplexRate:
    """
    Energy shift and damping rate pair, representing shift - i*hbar*damping/2
    """

    # Energy shift (J)
    shift: float
    # Damping rate (1/s)
    damping: float = 0.0

    @property
    def complex_energy(self) -> complex:
        return complex(self.shift, -hbar * self.damping / 2)

    def __add__(self, other: "ComplexRate") -> "ComplexRate":
        return ComplexRate(
            shift=self.shift + other.shift, damping=self.damping + other.damping
        )


@dataclass(frozen=True)
class CouplingShifts:
    gg: ComplexRate
    ee: ComplexRate
    ge: ComplexRate
    eg: ComplexRate


@dataclass(frozen=True)
class RabiParams:
    """
    Complex frequencies (rad/s) of the effective two-state Hamiltonian

        H = [[omega_g_tilde, Omega / 2], [Omega_star / 2, omega_e_tilde]]

    Omega_star is the conjugate of Omega only without damping.
    """

    omega_g_tilde: complex
    omega_e_tilde: complex
    delta_tilde: complex
    Omega: complex
    Omega_star: complex
    Omega_R: complex

    @property
    def is_dissipationless(self) -> bool:
        return (
            self.omega_g_tilde.imag == 0
            and self.omega_e_tilde.imag == 0
            and self.Omega.imag == 0
            and self.Omega_star.imag == 0
        )

    @property
    def transfer_time(self) -> float:
        """Duration pi/Omega_R of a full population transfer (s)"""
        if self.Omega_R == 0:
            return float("inf")
        return float(np.pi / abs(self.Omega_R))

    def hamiltonian(self) -> np.ndarray:
        return np.array(
            [
                [self.omega_g_tilde, self.Omega / 2],
                [self.Omega_star / 2, self.omega_e_tilde],
            ],
            dtype=complex,
        )


@dataclass(frozen=True)
class EvolutionOperator:
    """
    Two-state propagator with amplitudes u_ab = <a|U(T)|b>
    """

    ugg: complex
    uge: complex
    ueg: complex
    uee: complex
    # Duration (s)
    T: float

    def as_matrix(self) -> np.ndarray:
        return np.array([[self.ugg, self.uge], [self.ueg, self.uee]], dtype=complex)

    def apply(self, a_g: complex, a_e: complex):
        return (
            self.ugg * a_g + self.uge * a_e,
            self.ueg * a_g + self.uee * a_e,
        )
