# core/logging/setup.py
import logging
import logging.config
from typing import Optional

from core.errors import InternalError

logger = logging.getLogger("tortile_engine")

LOG_FORMAT = "%(asctime)s - %(name)s - %(levelname)s - %(message)s"


def build_logging_config(level: str = "WARNING", log_file: Optional[str] = None) -> dict:
    """Build the dictConfig mapping for the given level and optional log file."""
    handlers = {
        "console": {
            "class": "logging.StreamHandler",
            "level": level,
            "formatter": "default",
            "stream": "ext://sys.stderr",
        },
    }
    if log_file:
        handlers["file"] = {
            "class": "logging.FileHandler",
            "filename": log_file,
            "level": "DEBUG",
            "formatter": "default",
        }
    logger_level = "DEBUG" if log_file else level
    return {
        "version": 1,
        "disable_existing_loggers": False,
        "formatters": {
            "default": {"format": LOG_FORMAT},
        },
        "handlers": handlers,
        "loggers": {
            "tortile_engine": {
                "level": logger_level,
                "handlers": list(handlers),
                "propagate": False,
            },
        },
        "root": {
            "level": logger_level,
            "handlers": list(handlers),
        },
    }


def setup_logging(level: str = "WARNING", log_file: Optional[str] = None) -> None:
    """Set up logging for the command line process.

    Args:
        level (str): Threshold for console output. Defaults to "WARNING".
        log_file (Optional[str]): Also log everything at DEBUG to this file when given.

    Raises:
        InternalError: If the configuration cannot be applied.
    """
    try:
        logging.config.dictConfig(build_logging_config(level.upper(), log_file))
        logger.info("Logging setup completed")
    except ValueError as ve:
        logger.error(f"Invalid config: {str(ve)}", exc_info=True)
        raise InternalError(f"Invalid logging configuration: {str(ve)}")
    except FileNotFoundError as fnf:
        logger.error(f"File path error: {str(fnf)}", exc_info=True)
        raise InternalError(f"Log file path error: {str(fnf)}")
    except PermissionError as pe:
        logger.error(f"Permission denied: {str(pe)}", exc_info=True)
        raise InternalError(f"Permission denied: {str(pe)}")
