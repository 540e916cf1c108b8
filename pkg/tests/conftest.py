import math

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from punct_metrics.sphere_metrics import INF, normalize

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

INV_E = math.exp(-1)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def c01():
    return normalize([0, 1, INF])[0]


@pytest.fixture(scope="session")
def four():
    return normalize([0, 1, complex(-1.0, 1.5), INF])[0]
