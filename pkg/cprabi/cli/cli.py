import click
from click_default_group import DefaultGroup

from cprabi.core.config import app_config
from cprabi.core.exceptions import ConfigError
from cprabi.core.log import setup_logger
from cprabi.schema.sweep import ReportConfigSchema, SweepConfigSchema
from cprabi.sweep import report_point, run_sweep
from cprabi.version import app_build_version

from .base import handle_errors, load_config, logger, read_config


@click.group(cls=DefaultGroup, default="sweep", default_if_no_args=True)
@click.version_option(app_build_version)
@click.option(
    "--log-level",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR"], case_sensitive=False),
    default=None,
    help="Overrides configured log level.",
)
@click.option(
    "--json-log/--inline-log", default=None, help="Log lines format (default: config)"
)
@handle_errors
def cli(log_level, json_log):
    """Casimir-Polder induced Rabi oscillations near a mirror"""
    read_config()
    setup_logger(
        enable_json_logger=json_log,
        level=log_level.upper() if log_level else None,
    )


def _species_option(f):
    return click.option(
        "--species",
        "species_path",
        type=click.Path(dir_okay=False),
        default=None,
        help="Species JSON document (default: config, shipped 87Rb data).",
    )(f)


def _tolerance_option(f):
    return click.option(
        "--tolerance",
        type=float,
        default=None,
        help="Relative quadrature tolerance (default: config).",
    )(f)


def _xi_option(f):
    return click.option(
        "--xi",
        type=float,
        default=None,
        help="Skin depth of the surface (m), enables damping estimate.",
    )(f)


def _or_default(value, default):
    return default if value is None else value


def _report(z, species_path, xi, tolerance, times):
    cfg = load_config(
        ReportConfigSchema(),
        {
            "z": z,
            "species_path": _or_default(species_path, app_config.cprabi.species),
            "xi": xi,
            "tolerance": _or_default(tolerance, app_config.cprabi.tolerance),
            "times": list(times) if times else None,
        },
    )
    click.echo(report_point(cfg), nl=False)


@cli.command("sweep")
@click.option("--z-min", type=float, default=40e-9, show_default=True, help="(m)")
@click.option("--z-max", type=float, default=1e-6, show_default=True, help="(m)")
@click.option("--points", type=int, default=50, show_default=True)
@click.option("--log", "log_spacing", is_flag=True, help="Logarithmic Z spacing.")
@_species_option
@_xi_option
@click.option(
    "--out",
    "output_path",
    type=click.Path(dir_okay=False, writable=True),
    default=None,
    help="Output CSV file (default: stdout).",
)
@click.option(
    "--report",
    "report_z",
    type=float,
    default=None,
    help="Print single-point report at Z (m) instead of a sweep.",
)
@_tolerance_option
@click.option(
    "--workers", type=int, default=None, help="Worker processes (default: config)."
)
@handle_errors
def sweep(
    z_min,
    z_max,
    points,
    log_spacing,
    species_path,
    xi,
    output_path,
    report_z,
    tolerance,
    workers,
):
    """
    Sweep atom-surface distance and emit CSV
    """
    if report_z is not None:
        _report(report_z, species_path, xi, tolerance, None)
        return

    cfg = load_config(
        SweepConfigSchema(),
        {
            "z_min": z_min,
            "z_max": z_max,
            "points": points,
            "spacing": "log" if log_spacing else "linear",
            "species_path": _or_default(species_path, app_config.cprabi.species),
            "xi": xi,
            "output_path": output_path,
            "tolerance": _or_default(tolerance, app_config.cprabi.tolerance),
            "workers": _or_default(workers, app_config.cprabi.workers),
        },
    )
    document = run_sweep(cfg)
    if cfg.output_path is None:
        click.echo(document, nl=False)
        return
    try:
        with open(cfg.output_path, "w", newline="") as f:
            f.write(document)
    except OSError as e:
        raise ConfigError(f"Can't write output file {cfg.output_path}: {e}")
    logger.info("Sweep written", extra={"path": cfg.output_path})


@cli.command("report")
@click.argument("z", type=float)
@_species_option
@_xi_option
@click.option(
    "--time",
    "times",
    type=float,
    multiple=True,
    help="Sampling time (s), repeatable (default: one Rabi cycle).",
)
@_tolerance_option
@handle_errors
def report(z, species_path, xi, times, tolerance):
    """
    Print coupling parameters and Rabi trajectory at distance Z (m)
    """
    _report(z, species_path, xi, tolerance, times)
