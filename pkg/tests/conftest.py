import copy

import pytest

from holodense.config import LogCapture, load_config
from holodense.curve_places import validate_curve
from holodense.field_tower import make_prime_field


@pytest.fixture(scope="session")
def base_config():
    return load_config()


@pytest.fixture
def config(base_config):
    return copy.deepcopy(base_config)


@pytest.fixture
def log_capture(config):
    return LogCapture(config)


@pytest.fixture(scope="session")
def F2():
    return make_prime_field(2)


@pytest.fixture(scope="session")
def F5():
    return make_prime_field(5)


@pytest.fixture(scope="session")
def E5(F5):
    """y^2 = x^3 + x + 1 over F_5: N_1 = 9, N_2 = 27, N_3 = 108."""
    return validate_curve(F5, 1, 1)
