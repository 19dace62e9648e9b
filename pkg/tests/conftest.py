import numpy as np
import pytest

from config import runtime_config
from core import make_rng


@pytest.fixture
def rng():
    return make_rng(1234)


@pytest.fixture(autouse=True)
def restore_runtime_config():
    saved = dict(vars(runtime_config))
    yield
    vars(runtime_config).update(saved)


def binomial_bounds(n: int, p: float, sigmas: float = 4.0):
    """Interval n p +- sigmas sqrt(n p (1 - p))."""
    spread = sigmas * np.sqrt(n * p * (1 - p))
    return n * p - spread, n * p + spread
