import numpy as np
import pytest


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_addoption(parser):
    parser.addoption(
        "--heavy", action="store_true", default=False,
        help="run the opt-in heavy checks (octonion third-family cases, e8-size sweeps)",
    )


@pytest.fixture
def heavy(request):
    return request.config.getoption("--heavy")
