import logging

import pytest
from pydantic import ValidationError as PydanticValidationError

from app.config.env import get_env_var
from app.config.settings import Settings, load_settings
from core.errors import (
    EXIT_INPUT_ERROR,
    EXIT_INTERNAL,
    EXIT_PROPERTY_FAILURE,
    CoherenceError,
    DiagramValidationError,
    InternalError,
    InvalidDeformationError,
    NonUnitError,
    ParseError,
    ValidationError,
)
from core.logging.setup import build_logging_config, setup_logging


def test_settings_defaults():
    config = Settings()
    assert config.FIELD == "Q"
    assert config.ORDER == 2
    assert config.OUTPUT_MODE == "human"
    assert config.MAX_DEGREE == 4


def test_settings_read_prefixed_environment(monkeypatch):
    monkeypatch.setenv("TORTILE_ORDER", "5")
    monkeypatch.setenv("TORTILE_OUTPUT_MODE", "machine")
    monkeypatch.setenv("TORTILE_LOG_LEVEL", "debug")
    config = load_settings()
    assert config.ORDER == 5
    assert config.OUTPUT_MODE == "machine"
    assert config.LOG_LEVEL == "DEBUG"


def test_settings_reject_bad_values():
    with pytest.raises(PydanticValidationError):
        Settings(LOG_LEVEL="LOUD")
    with pytest.raises(PydanticValidationError):
        Settings(MAX_DEGREE=5)


def test_env_var_without_default_is_required(monkeypatch):
    monkeypatch.delenv("TORTILE_UNSET_FOR_TEST", raising=False)
    with pytest.raises(ValidationError):
        get_env_var("UNSET_FOR_TEST")
    assert get_env_var("UNSET_FOR_TEST", "fallback") == "fallback"


def test_logging_config_adds_file_handler(tmp_path):
    config = build_logging_config("INFO", str(tmp_path / "run.log"))
    assert set(config["handlers"]) == {"console", "file"}
    assert config["handlers"]["file"]["level"] == "DEBUG"
    assert config["loggers"]["tortile_engine"]["handlers"] == ["console", "file"]
    assert set(build_logging_config()["handlers"]) == {"console"}


def test_setup_logging_writes_debug_to_file(tmp_path):
    path = tmp_path / "debug.log"
    setup_logging("WARNING", str(path))
    logging.getLogger("tortile_engine.test").debug("hello from the test")
    for handler in logging.getLogger("tortile_engine").handlers:
        handler.flush()
    assert "hello from the test" in path.read_text()
    setup_logging("WARNING")


def test_setup_logging_rejects_unknown_level():
    with pytest.raises(InternalError):
        setup_logging("LOUD")


def test_error_exit_codes_and_messages():
    assert ParseError("bad", "p.txt", 4).detail == "p.txt:4: bad"
    assert ParseError("bad").exit_code == EXIT_INPUT_ERROR
    assert DiagramValidationError(3, "mismatch").detail == "slice 3: mismatch"
    assert CoherenceError("pentagon", witnesses=[("g",)]).exit_code == EXIT_PROPERTY_FAILURE
    assert NonUnitError().exit_code == EXIT_INPUT_ERROR
    assert InternalError().exit_code == EXIT_INTERNAL
    error = InvalidDeformationError(["g", "g", "e"])
    assert error.witness == ("g", "g", "e")
    assert isinstance(error, ValidationError)
