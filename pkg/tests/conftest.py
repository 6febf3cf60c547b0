import pytest

from tiltbraid.algebra import build_auslander, build_preprojective


@pytest.fixture(scope="session")
def lambda2():
    return build_auslander(2)


@pytest.fixture(scope="session")
def lambda3():
    return build_auslander(3)


@pytest.fixture(scope="session")
def pi3():
    return build_preprojective(3)
