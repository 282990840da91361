"""Shared fixtures and the slow-test switch"""

import pytest

from wflag.config import get_settings


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow tests (E6, Groebner bases)")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="need --runslow option to run")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def settings_env(monkeypatch):
    """Set WFLAG_* variables for one test and rebuild the cached settings"""
    def apply(**values):
        for key, value in values.items():
            monkeypatch.setenv(f"WFLAG_{key}", str(value))
        get_settings.cache_clear()
        return get_settings()

    yield apply
    get_settings.cache_clear()
