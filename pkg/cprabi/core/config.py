import os
from typing import Optional

from typedconfig import Config, group_key, key, section
from typedconfig.source import EnvironmentConfigSource, IniFileConfigSource

from cprabi.paths import default_species_path


def intbool(v) -> bool:
    return bool(int(v))


def positive_float(v) -> float:
    v = float(v)
    if not v > 0:
        raise ValueError(f"Value {v} must be positive")
    return v


def positive_int(v) -> int:
    v = int(v)
    if v < 1:
        raise ValueError(f"Value {v} must be at least 1")
    return v


def path(v) -> Optional[str]:
    if not v:
        return None
    v = os.path.abspath(v)
    if not os.path.exists(v):
        raise ValueError(f"Path {v} doesn't exist")
    return v


def log_level(v) -> str:
    v = v.upper()
    if v not in ("DEBUG", "INFO", "WARNING", "ERROR"):
        raise ValueError(f"Log level {v} doesn't exist")
    return v


@section("cprabi")
class CPRabiConfig(Config):
    # Relative tolerance of the imaginary-frequency quadratures
    tolerance = key(cast=positive_float, required=False, default=1e-9)
    # Adaptive subdivision limit passed to QUADPACK
    max_subdivisions = key(cast=positive_int, required=False, default=200)
    # Number of processes computing sweep rows
    workers = key(cast=positive_int, required=False, default=1)
    # Species document used when --species is not given
    species = key(cast=path, required=False, default=default_species_path)

    enable_json_logger = key(cast=intbool, required=False, default=False)
    log_level = key(cast=log_level, required=False, default="INFO")


class AppConfig(Config):
    cprabi = group_key(CPRabiConfig)


def _config_sources():
    return [
        EnvironmentConfigSource(),
        IniFileConfigSource("cprabi.ini", must_exist=False),
        IniFileConfigSource(
            os.path.expanduser("~/.cprabi/cprabi.ini"), must_exist=False
        ),
        IniFileConfigSource("/etc/cprabi/cprabi.ini", must_exist=False),
    ]


app_config = AppConfig(sources=_config_sources())


def reload_config():
    app_config.provider.set_sources(_config_sources())
    app_config.provider.clear_cache()
