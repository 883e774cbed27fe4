import pytest

from src.constants.reserved import ENV_VARS
from src.logging_setup import configure_logging


@pytest.fixture(scope="session", autouse=True)
def _logging():
    configure_logging("WARNING")


@pytest.fixture(autouse=True)
def _clean_engine_env(monkeypatch):
    # Engine settings come from the environment; every test starts from the defaults.
    for name in ENV_VARS.values():
        monkeypatch.delenv(name, raising=False)
