import pytest

from hqec import codes


@pytest.fixture(scope="session")
def r3_correction():
    return codes.build_r3_correction()


@pytest.fixture(scope="session")
def h3_correction():
    return codes.build_h3_correction()


@pytest.fixture(scope="session")
def shor9_correction():
    return codes.build_shor9_correction()
