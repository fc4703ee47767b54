import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from finalg import Partition, certificate_from_operation, fixtures
from finalg.generator import fixture_gen1, fixture_gen2, fixture_gen3


@pytest.fixture(scope="session")
def z2():
    return fixtures.z2()


@pytest.fixture(scope="session")
def z4():
    return fixtures.z4()


@pytest.fixture(scope="session")
def s2():
    return fixtures.s2()


@pytest.fixture(scope="session")
def two_sq():
    return fixtures.two_squared()


@pytest.fixture(scope="session")
def z4_theta(z4):
    return Partition(4, [[0, 2], [1, 3]])


@pytest.fixture(scope="session")
def cert_z2(z2):
    return certificate_from_operation(z2, "d")


@pytest.fixture(scope="session")
def cert_z4(z4):
    return certificate_from_operation(z4, "p")


@pytest.fixture(scope="session")
def cert_two_sq(two_sq):
    return certificate_from_operation(two_sq, "d")


@pytest.fixture(scope="session")
def gen1():
    return fixture_gen1()


@pytest.fixture(scope="session")
def gen2():
    return fixture_gen2()


@pytest.fixture(scope="session")
def gen3():
    return fixture_gen3()


@pytest.fixture(scope="session")
def cert_gen1(gen1):
    return certificate_from_operation(gen1.algebra, "d")


@pytest.fixture(scope="session")
def cert_gen2(gen2):
    return certificate_from_operation(gen2.algebra, "d")


@pytest.fixture(scope="session")
def cert_gen3(gen3):
    return certificate_from_operation(gen3.algebra, "d")
