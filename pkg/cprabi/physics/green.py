"""
Scattering Green tensor of a planar surface at the atom position.

The surface is the z=0 plane, the atom sits at distance Z on the z axis and
the quantization axis lies along x (parallel to the surface). Only diagonal
components are non-zero for a planar geometry; Gxx = Gyy.
"""
import cmath
import enum
import math
from abc import ABC, abstractmethod
from dataclasses import dataclass

from scipy.constants import c as SPEED_OF_LIGHT

from cprabi.model.atom import HyperfineState, TransitionLine

from .dipole import dipole_products

# Below this kZ the real-axis formulas switch to their Taylor expansion
NEAR_FIELD_SERIES_LIMIT = 1e-3


class FrequencyAxis(enum.Enum):
    REAL = "real"
    IMAGINARY = "imaginary"


@dataclass(frozen=True)
class GreenDiagonal:
    """
    Diagonal of the scattering Green tensor G(R, R; w) in 1/m.

    frequency holds w for the real axis and u for w = iu on the imaginary one.
    """

    Gxx: complex
    Gyy: complex
    Gzz: complex
    Z: float
    frequency: float
    axis: FrequencyAxis

    @property
    def anisotropy(self) -> complex:
        """(Gzz - Gyy) / 2"""
        return (self.Gzz - self.Gyy) / 2

    @property
    def transverse(self) -> complex:
        """(Gzz + Gyy) / 2"""
        return (self.Gzz + self.Gyy) / 2

    def real_part(self) -> "GreenDiagonal":
        return GreenDiagonal(
            Gxx=complex(self.Gxx).real,
            Gyy=complex(self.Gyy).real,
            Gzz=complex(self.Gzz).real,
            Z=self.Z,
            frequency=self.frequency,
            axis=self.axis,
        )


def _check_positive(name, value):
    if not (value > 0 and math.isfinite(value)):
        raise ValueError(f"{name} must be positive and finite, got {value}")


class ScatteringGreen(ABC):
    """
    Producer of GreenDiagonal values for a given surface
    """

    @abstractmethod
    def real(self, Z: float, omega: float) -> GreenDiagonal:
        raise NotImplementedError

    @abstractmethod
    def imag(self, Z: float, u: float) -> GreenDiagonal:
        raise NotImplementedError


class PerfectMirror(ScatteringGreen):
    """
    Perfectly reflecting plane
    """

    def real(self, Z: float, omega: float) -> GreenDiagonal:
        _check_positive("Distance", Z)
        _check_positive("Frequency", omega)
        a = omega * Z / SPEED_OF_LIGHT
        if a < NEAR_FIELD_SERIES_LIMIT:
            a2 = a * a
            gxx = -(
                1 / a2 - 2 - 16j / 3 * a + 6 * a2 + 64j / 15 * a2 * a
            ) / (32 * math.pi * Z)
            gzz = (
                -1 / a2 - 2 - 8j / 3 * a + 2 * a2 + 16j / 15 * a2 * a
            ) / (16 * math.pi * Z)
        else:
            phase = cmath.exp(2j * a)
            gxx = -phase * (1 - 2j * a - 4 * a * a) / (32 * math.pi * a * a * Z)
            gzz = phase * (-1 + 2j * a) / (16 * math.pi * a * a * Z)
        return GreenDiagonal(
            Gxx=gxx,
            Gyy=gxx,
            Gzz=gzz,
            Z=Z,
            frequency=omega,
            axis=FrequencyAxis.REAL,
        )

    def imag(self, Z: float, u: float) -> GreenDiagonal:
        _check_positive("Distance", Z)
        _check_positive("Frequency", u)
        x = u * Z / SPEED_OF_LIGHT
        decay = math.exp(-2 * x) / (32 * math.pi * x * x * Z)
        gxx = decay * (1 + 2 * x + 4 * x * x)
        gzz = 2 * decay * (1 + 2 * x)
        return GreenDiagonal(
            Gxx=gxx,
            Gyy=gxx,
            Gzz=gzz,
            Z=Z,
            frequency=u,
            axis=FrequencyAxis.IMAGINARY,
        )


perfect_mirror = PerfectMirror()


def green_real(Z: float, omega: float) -> GreenDiagonal:
    """
    Perfect-mirror Green tensor at real frequency omega (rad/s)
    """
    return perfect_mirror.real(Z, omega)


def green_imag(Z: float, u: float) -> GreenDiagonal:
    """
    Perfect-mirror Green tensor at imaginary frequency iu (u in rad/s).
    All components are real.
    """
    return perfect_mirror.imag(Z, u)


def contract(products, G: GreenDiagonal) -> complex:
    """
    Contracts precomputed DipoleProducts with the Green tensor diagonal
    """
    return (
        G.Gxx * products.longitudinal
        + G.anisotropy * products.crossed
        + G.transverse * products.parallel
    )


def trace_contract(
    g: HyperfineState,
    e: HyperfineState,
    i: HyperfineState,
    G: GreenDiagonal,
    line: TransitionLine,
) -> complex:
    """
    Tr{<g|d|i> G <i|d|e>} for a single intermediate state i.

    Spherical components are defined by d_x = d_0, d_y = (d_- - d_+)/sqrt(2),
    d_z = i(d_- + d_+)/sqrt(2) with x along the quantization axis.
    """
    return contract(dipole_products(g, e, i, line), G)
