from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from hyperweight.gf import make_field

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def F2():
    return make_field(2)


@pytest.fixture(scope="session")
def F3():
    return make_field(3)


@pytest.fixture(scope="session")
def F4():
    return make_field(4)


@pytest.fixture(scope="session")
def F5():
    return make_field(5)
