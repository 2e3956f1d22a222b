import pytest

from hypbuild.chamber import validate


@pytest.fixture(scope="session")
def spec238():
    return validate(3, (2, 3, 8))


@pytest.fixture(scope="session")
def spec334():
    return validate(3, (3, 3, 4))


@pytest.fixture(scope="session")
def spec248():
    return validate(3, (2, 4, 8))


@pytest.fixture(scope="session")
def pentagon():
    return validate(5, (2, 2, 2, 2, 2))


@pytest.fixture(scope="session")
def pentagon_thick():
    return validate(5, (2, 2, 2, 2, 2), (2, 2, 2, 2, 2))
