import pytest
from hypothesis import HealthCheck, settings

from fieldred.reduction import context

settings.register_profile(
    "fieldred",
    derandomize=True,
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("fieldred")


@pytest.fixture(scope="session")
def ctx3():
    return context(3)


@pytest.fixture(scope="session")
def ctx4():
    return context(4)


@pytest.fixture(scope="session")
def ctx5():
    return context(5)
