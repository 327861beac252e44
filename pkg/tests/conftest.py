import os

import pytest
from hypothesis import HealthCheck, settings

from logring.data.presets import duality_domain_table, preset_fan
from logring.services.motive_ring import SymbolTable

settings.register_profile("logring", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", parent=settings.get_profile("logring"), max_examples=50)
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "logring"))


@pytest.fixture
def table():
    return SymbolTable()


@pytest.fixture
def dual_table():
    return duality_domain_table()


@pytest.fixture
def fan():
    """Factory for preset fans by name."""
    return preset_fan
