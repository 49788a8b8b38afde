import os
import sys

import pytest
from hypothesis import HealthCheck, settings

from torsionlab.exactla import Field
from torsionlab.modcat import category
from torsionlab.quiver import Quiver

sys.path.insert(0, os.path.dirname(__file__))

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("thorough", max_examples=300, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

F2, F3, QQ = Field(2), Field(3), Field(0)


@pytest.fixture(scope="session")
def a1():
    return category(Quiver.linear_a(1), F2)


@pytest.fixture(scope="session")
def a2():
    return category(Quiver.linear_a(2), F2)


@pytest.fixture(scope="session")
def a3():
    return category(Quiver.linear_a(3), F2)


@pytest.fixture(scope="session")
def a3_f3():
    return category(Quiver.linear_a(3), F3)


@pytest.fixture(scope="session")
def a3_q():
    return category(Quiver.linear_a(3), QQ)


@pytest.fixture(scope="session")
def d4():
    return category(Quiver.d4(), F2)
