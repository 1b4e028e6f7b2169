import functools

import click
from marshmallow import ValidationError

from cprabi.core.config import app_config
from cprabi.core.exceptions import (
    CasimirRabiError,
    ConfigError,
    SpeciesDataError,
    StateMismatchError,
)
from cprabi.core.log import getLogger

logger = getLogger()

EXIT_CONFIG_ERROR = 2
EXIT_DATA_ERROR = 3
EXIT_NUMERICAL_ERROR = 4


def exit_code(error: CasimirRabiError) -> int:
    if isinstance(error, ConfigError):
        return EXIT_CONFIG_ERROR
    if isinstance(error, (SpeciesDataError, StateMismatchError)):
        return EXIT_DATA_ERROR
    return EXIT_NUMERICAL_ERROR


def read_config():
    """
    Reads every configuration key, so invalid env or ini values
    are reported before any computation starts
    """
    try:
        app_config.read()
    except (KeyError, ValueError) as e:
        raise ConfigError(f"Wrong cprabi configuration: {e}")


def load_config(schema, params):
    """
    Validates command parameters with marshmallow schema
    """
    try:
        return schema.load(params)
    except ValidationError as e:
        raise ConfigError(f"Invalid configuration: {e.messages}", e.messages)


def handle_errors(f):
    """
    Reports package errors on stderr and exits with the matching status
    """

    @functools.wraps(f)
    def wrapper(*args, **kwargs):
        try:
            return f(*args, **kwargs)
        except CasimirRabiError as e:
            logger.error("Command failed", extra={"error": type(e).__name__})
            click.echo(f"[!] {e}", err=True)
            click.get_current_context().exit(exit_code(e))

    return wrapper
