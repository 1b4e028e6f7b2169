import contextlib
import contextvars
import logging

import logmatic

from .config import app_config

# Distance of the sweep row being currently computed (in nm)
current_distance = contextvars.ContextVar("current_distance", default=None)


class ContextFilter(logging.Filter):
    def filter(self, record):
        distance = current_distance.get()
        if distance is not None:
            record.distance_nm = distance
        return True


class InlineFormatter(logging.Formatter):
    def format(self, record):
        extra_list = []

        for k, v in record.__dict__.items():
            if k not in logging.makeLogRecord({"message": ""}).__dict__:
                extra_list.append("{}:{}".format(k, v))

        return " - ".join([super().format(record), *extra_list])


@contextlib.contextmanager
def distance_context(distance_m):
    token = current_distance.set(round(distance_m * 1e9, 6))
    try:
        yield
    finally:
        current_distance.reset(token)


def setup_logger(enable_json_logger=None, level=None):
    if enable_json_logger is None:
        enable_json_logger = app_config.cprabi.enable_json_logger
    if level is None:
        level = app_config.cprabi.log_level

    logger = logging.getLogger("cprabi")

    if logger.handlers:
        # If already configured: only adjust the level
        logger.setLevel(level)
        return

    # Don't propagate to root logger
    logger.propagate = False

    handler = logging.StreamHandler()

    if enable_json_logger:
        formatter = logmatic.JsonFormatter(
            fmt="%(filename) %(funcName) %(levelname) "
            "%(lineno) %(module) %(processName) %(message)"
        )
    else:
        formatter = InlineFormatter(
            fmt="[%(levelname)s] %(processName)s "
            "- %(module)s.%(funcName)s:%(lineno)s"
            " - %(message)s"
        )
    handler.setFormatter(formatter)
    handler.addFilter(ContextFilter())
    logger.addHandler(handler)
    logger.setLevel(level)


def getLogger():
    return logging.getLogger("cprabi.application")
