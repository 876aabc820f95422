import pytest

from usokit import enumerate_brute


@pytest.fixture(scope="session")
def catalogue1():
    return list(enumerate_brute(1))


@pytest.fixture(scope="session")
def catalogue2():
    return list(enumerate_brute(2))


@pytest.fixture(scope="session")
def catalogue3():
    return list(enumerate_brute(3))
