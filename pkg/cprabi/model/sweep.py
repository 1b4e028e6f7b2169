from dataclasses import dataclass
from typing import List, Optional, Tuple

import numpy as np

from .rates import CouplingShifts

CSV_COLUMNS = (
    "Z_m",
    "omega_R_over_2pi_Hz",
    "omega_R_full_Hz",
    "delta_E_gg_over_h_Hz",
    "gamma_estimate_Hz",
    "feasible",
)


def format_number(value: Optional[float]) -> str:
    if value is None:
        return ""
    return "{:.16e}".format(value)


@dataclass(frozen=True)
class SweepConfig:
    # Distances in m
    z_min: float
    z_max: float
    points: int
    species_path: str
    tolerance: float
    spacing: str = "linear"
    # Skin depth of the surface (m)
    xi: Optional[float] = None
    output_path: Optional[str] = None
    workers: int = 1

    def distances(self) -> List[float]:
        if self.spacing == "log":
            grid = np.geomspace(self.z_min, self.z_max, self.points)
        else:
            grid = np.linspace(self.z_min, self.z_max, self.points)
        return [float(z) for z in grid]


@dataclass(frozen=True)
class ReportConfig:
    z: float
    species_path: str
    tolerance: float
    xi: Optional[float] = None
    times: Optional[Tuple[float, ...]] = None


@dataclass(frozen=True)
class SweepRow:
    Z: float
    # Omega_R / 2pi (Hz) from the leading-order hyperfine formula
    omega_R_leading: Optional[float]
    # Omega_R / 2pi (Hz) from the full quadrature
    omega_R_full: float
    # dE_gg / h (Hz)
    delta_E_gg: float
    # Gamma / 2pi (Hz), None without skin depth or outside anchored range
    gamma: Optional[float]
    feasible: Optional[bool]
    shifts: CouplingShifts

    def csv_fields(self) -> List[str]:
        if self.feasible is None:
            feasible = ""
        else:
            feasible = "true" if self.feasible else "false"
        return [
            format_number(self.Z),
            format_number(self.omega_R_leading),
            format_number(self.omega_R_full),
            format_number(self.delta_E_gg),
            format_number(self.gamma),
            feasible,
        ]
