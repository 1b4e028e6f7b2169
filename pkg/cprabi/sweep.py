"""
Distance sweeps and single-point reports
"""
import csv
import io
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from typing import List, Optional

from scipy.constants import h

from cprabi.core.exceptions import PreconditionError, UnanchoredDistanceError
from cprabi.core.log import distance_context, getLogger, setup_logger
from cprabi.model.atom import SpeciesData
from cprabi.model.rates import ComplexRate
from cprabi.model.sweep import (
    CSV_COLUMNS,
    ReportConfig,
    SweepConfig,
    SweepRow,
    format_number,
)
from cprabi.physics.coupling import coupling_shifts, nonadditive_leading, rabi_params
from cprabi.physics.dynamics import (
    angular_momentum_x,
    anchored_damping,
    evolve,
    feasibility_window,
    populations,
    spin_trajectory,
)
from cprabi.schema.species import load_species_file

logger = getLogger()

# Samples of the default report grid spanning one Rabi cycle
DEFAULT_REPORT_SAMPLES = 9

# Columns of the report trajectory; J_x and I_x are spin projections (hbar)
TRAJECTORY_HEADER = "T_s P_g P_e L_x J_x I_x"


def compute_row(
    Z: float, species: SpeciesData, xi: Optional[float], tolerance: float
) -> SweepRow:
    with distance_context(Z):
        try:
            leading = 2 * abs(nonadditive_leading(species, Z, rel_tol=tolerance)) / h
        except PreconditionError as e:
            logger.warning("Leading-order formula skipped", extra={"reason": str(e)})
            leading = None

        g, e = species.degenerate_pair()
        shifts = coupling_shifts(g, e, species, Z, rel_tol=tolerance)
        params = rabi_params(shifts)
        omega_R = abs(params.Omega_R)

        gamma = feasible = None
        if xi is not None:
            try:
                feasibility = feasibility_window(xi, Z, omega_R)
            except UnanchoredDistanceError as e:
                logger.warning("Damping estimate skipped", extra={"reason": str(e)})
            else:
                gamma = feasibility.gamma / (2 * math.pi)
                feasible = feasibility.feasible

        row = SweepRow(
            Z=Z,
            omega_R_leading=leading,
            omega_R_full=omega_R / (2 * math.pi),
            delta_E_gg=shifts.gg.shift / h,
            gamma=gamma,
            feasible=feasible,
            shifts=shifts,
        )
        logger.info(
            "Sweep row computed",
            extra={"omega_R_full_Hz": row.omega_R_full, "omega_R_leading_Hz": leading},
        )
        return row


def _worker_init():
    setup_logger()


def compute_rows(cfg: SweepConfig, species: SpeciesData) -> List[SweepRow]:
    distances = cfg.distances()
    args = (
        distances,
        [species] * len(distances),
        [cfg.xi] * len(distances),
        [cfg.tolerance] * len(distances),
    )
    if cfg.workers > 1:
        with ProcessPoolExecutor(
            max_workers=cfg.workers, initializer=_worker_init
        ) as executor:
            # map preserves the order of distances
            return list(executor.map(compute_row, *args))
    return list(map(compute_row, *args))


def render_csv(rows: List[SweepRow]) -> str:
    output = io.StringIO()
    writer = csv.writer(output, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for row in rows:
        writer.writerow(row.csv_fields())
    return output.getvalue()


def run_sweep(cfg: SweepConfig) -> str:
    """
    Computes one CSV row per distance of the sweep grid

    :return: CSV document with header
    """
    species = load_species_file(cfg.species_path)
    logger.info(
        "Sweep started",
        extra={
            "points": cfg.points,
            "z_min_m": cfg.z_min,
            "z_max_m": cfg.z_max,
            "workers": cfg.workers,
        },
    )
    return render_csv(compute_rows(cfg, species))


def _format_complex(value: complex) -> str:
    value = complex(value)
    return f"{format_number(value.real)} {format_number(value.imag)}j"


def report_point(cfg: ReportConfig) -> str:
    """
    Human-readable report of a single distance: coupling parameters,
    feasibility estimate and the Rabi trajectory sampled on cfg.times.
    With a skin depth the anchored damping enters the evolved parameters.
    """
    species = load_species_file(cfg.species_path)
    row = compute_row(cfg.z, species, cfg.xi, cfg.tolerance)
    g, e = species.degenerate_pair()

    shifts = row.shifts
    if row.gamma is not None:
        gamma = anchored_damping(cfg.xi, cfg.z)
        shifts = replace(
            shifts,
            gg=ComplexRate(shift=shifts.gg.shift, damping=gamma),
            ee=ComplexRate(shift=shifts.ee.shift, damping=gamma),
        )
    params = rabi_params(shifts)

    lines = [
        f"Species: {species.name or '-'}",
        f"Z_m: {format_number(row.Z)}",
        f"omega_R_over_2pi_Hz: {format_number(row.omega_R_leading) or '-'}",
        f"omega_R_full_Hz: {format_number(row.omega_R_full)}",
        f"delta_E_gg_over_h_Hz: {format_number(row.delta_E_gg)}",
        "",
    ]
    if row.gamma is not None:
        verdict = "feasible" if row.feasible else "infeasible"
        lines.append(
            f"Damping estimate Gamma/2pi (Hz): {format_number(row.gamma)} ({verdict})"
        )
    elif cfg.xi is not None:
        lines.append("Damping estimate: unanchored distance")
    else:
        lines.append("Damping estimate: skin depth not given")
    lines += [
        "",
        "Rabi parameters (rad/s):",
        f"  omega_g_tilde: {_format_complex(params.omega_g_tilde)}",
        f"  omega_e_tilde: {_format_complex(params.omega_e_tilde)}",
        f"  delta_tilde: {_format_complex(params.delta_tilde)}",
        f"  Omega: {_format_complex(params.Omega)}",
        f"  Omega_star: {_format_complex(params.Omega_star)}",
        f"  Omega_R: {_format_complex(params.Omega_R)}",
        f"Transfer time pi/Omega_R (s): {format_number(params.transfer_time)}",
        "",
    ]

    times = cfg.times
    if times is None and math.isinf(params.transfer_time):
        times = [0.0]
    elif times is None:
        cycle = 2 * params.transfer_time
        times = [
            cycle * k / (DEFAULT_REPORT_SAMPLES - 1)
            for k in range(DEFAULT_REPORT_SAMPLES)
        ]
    lines.append(TRAJECTORY_HEADER)
    for T in times:
        P_g, P_e = populations(evolve(params, T))
        try:
            L_x = format_number(angular_momentum_x(params, T))
        except PreconditionError:
            L_x = "-"
        spins = spin_trajectory(params, T, g, e, species)
        fields = [
            format_number(T),
            format_number(P_g),
            format_number(P_e),
            L_x,
            format_number(spins.electronic),
            format_number(spins.nuclear),
        ]
        lines.append(" ".join(fields))
    return "\n".join(lines) + "\n"
