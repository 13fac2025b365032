# app/middleware/logging.py
import functools
import logging
from typing import Callable

from core.errors import BaseError, InternalError

logger = logging.getLogger(__name__)


def log_command(handler: Callable) -> Callable:
    """Log a command's start, arguments and exit code.

    Args:
        handler: Function taking (args, config) and returning an exit code.

    Returns:
        The wrapped handler.

    Raises:
        InternalError: If the handler fails with anything other than an engine error.
    """
    @functools.wraps(handler)
    def wrapper(args, config):
        arguments = {k: v for k, v in vars(args).items() if k != "handler"}
        logger.info(f"Command: {config.command} args={arguments}")
        try:
            code = handler(args, config)
            logger.info(f"Command: {config.command} exit={code}")
            return code
        except BaseError as be:
            logger.info(f"Command: {config.command} exit={be.exit_code}")
            raise
        except ValueError as ve:
            logger.error(f"ValueError in command processing: {str(ve)}", exc_info=True)
            raise InternalError(f"Invalid command data: {str(ve)}")
        except Exception as e:
            logger.error(f"Unexpected error in command processing: {str(e)}", exc_info=True)
            raise InternalError(f"Internal error: {str(e)}")

    return wrapper
