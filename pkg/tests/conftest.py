import pytest

from heckescan import sieve


@pytest.fixture(scope="session")
def table64():
    return sieve(64)


@pytest.fixture(scope="session")
def table_10k():
    return sieve(10_000)
