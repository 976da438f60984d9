# tests/conftest.py
"""Shared fixtures for the test suite."""

import numpy as np
import pytest

from models.fgmodule import parse_module
from models.universe import UniverseBounds
from state import settings


@pytest.fixture
def rng():
    return np.random.default_rng(settings.data["seed"])


@pytest.fixture
def M():
    """Shorthand for parsing a module expression."""
    return parse_module


@pytest.fixture
def small_bounds():
    return UniverseBounds(primes=(2,), max_rank=0, max_length_per_prime=3)


@pytest.fixture
def two_three_bounds():
    return UniverseBounds(primes=(2, 3), max_rank=0, max_length_per_prime=2)


@pytest.fixture(autouse=True)
def restore_settings():
    saved = dict(settings.data)
    yield
    settings.data = saved
