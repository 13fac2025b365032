# app/config/env.py
import logging
import os
from typing import Optional

from dotenv import load_dotenv

from core.errors import ValidationError

logger = logging.getLogger(__name__)

ENV_PREFIX = "TORTILE_"

load_dotenv()


def get_env_var(name: str, default: Optional[str] = None) -> str:
    """Retrieve a TORTILE_-prefixed environment variable.

    Args:
        name (str): Variable name without the prefix.
        default (Optional[str]): Value used when the variable is unset. Defaults to None.

    Returns:
        str: The value of the environment variable.

    Raises:
        ValidationError: If the variable is unset and no default is provided.
    """
    value = os.getenv(f"{ENV_PREFIX}{name}", default)
    if value is None:
        logger.error(f"Environment variable '{ENV_PREFIX}{name}' is not set and no default provided")
        raise ValidationError(f"Environment variable '{ENV_PREFIX}{name}' is required but not set")
    logger.debug(f"Retrieved environment variable: {ENV_PREFIX}{name} = {value}")
    return value
