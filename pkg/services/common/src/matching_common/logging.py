import logging
import os
import sys

from pythonjsonlogger.json import JsonFormatter

LOG_LEVEL_ENV = "STABLEMATCH_LOG_LEVEL"


def setup_logging(level: str | None = None):
    """
    Configures and sets up structured JSON logging for the application.

    This function initializes a JSON formatter that includes timestamp, level,
    logger name and message, and replaces the default handlers of the root
    logger with a single stream handler on standard error. Standard output is
    left to the reports the command line prints.

    Args:
        level: Optional level name; falls back to the STABLEMATCH_LOG_LEVEL
            environment variable and then to INFO.

    Returns:
        logging.Logger: The configured root logger instance.
    """
    formatter = JsonFormatter("%(asctime)s %(levelname)s %(name)s %(message)s")
    stream_handler = logging.StreamHandler(sys.stderr)
    stream_handler.setFormatter(formatter)

    root_logger = logging.getLogger()
    root_logger.setLevel((level or os.getenv(LOG_LEVEL_ENV, "INFO")).upper())
    root_logger.handlers = []
    root_logger.addHandler(stream_handler)

    return root_logger
