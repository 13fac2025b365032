# app/config/settings.py
import logging
from typing import Literal, Optional

from pydantic import Field, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from app.config.env import get_env_var

logger = logging.getLogger(__name__)


class Settings(BaseSettings):
    """Process defaults loaded from TORTILE_ environment variables or a .env file."""
    FIELD: str = Field("Q", description="Base field header: Q or Fp:<prime>")
    ORDER: int = Field(2, ge=0, description="Truncation order n of R_n = K[eps]/<eps^(n+1)>")
    OUTPUT_MODE: Literal["human", "machine"] = Field("human", description="Aligned tables or line records")
    LOG_LEVEL: str = Field("WARNING", description="Console log threshold")
    LOG_FILE: Optional[str] = Field(None, description="Optional file receiving DEBUG logs")
    MAX_DEGREE: int = Field(4, ge=1, le=4, description="Highest cochain degree materialized")
    MAX_SINGULAR: int = Field(3, ge=0, description="Default singular-point bound for verify-type sweeps")

    model_config = SettingsConfigDict(
        env_prefix="TORTILE_",
        env_file=".env",
        env_file_encoding="utf-8",
        extra="ignore",
    )

    @field_validator("LOG_LEVEL")
    def validate_log_level(cls, value):
        """Ensure the level is one logging understands."""
        valid_levels = ["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"]
        if value.upper() not in valid_levels:
            raise ValueError(f"LOG_LEVEL must be one of {valid_levels}, got: {value}")
        return value.upper()

    def __init__(self, **values):
        """Initialize settings and log the loaded values."""
        super().__init__(**values)
        logger.debug(f"Loaded settings: FIELD={self.FIELD}, ORDER={self.ORDER}, "
                     f"OUTPUT_MODE={self.OUTPUT_MODE}, MAX_DEGREE={self.MAX_DEGREE}")


def load_settings() -> Settings:
    """Load settings with environment variable validation."""
    try:
        return Settings(
            FIELD=get_env_var("FIELD", "Q"),
            LOG_LEVEL=get_env_var("LOG_LEVEL", "WARNING"),
        )
    except ValueError as ve:
        logger.error(f"Validation error loading settings: {str(ve)}", exc_info=True)
        raise
    except Exception as e:
        logger.error(f"Unexpected error loading settings: {str(e)}", exc_info=True)
        raise RuntimeError(f"Failed to load settings: {str(e)}")


settings = load_settings()
