import logging

from src.logging_setup import configure_logging


def test_level_comes_from_argument_then_environment(monkeypatch):
    try:
        configure_logging("debug")
        assert logging.getLogger().level == logging.DEBUG
        monkeypatch.setenv("LOG_LEVEL", "ERROR")
        configure_logging()
        assert logging.getLogger().level == logging.ERROR
        configure_logging("no-such-level")
        assert logging.getLogger().level == logging.WARNING
    finally:
        configure_logging("WARNING")
