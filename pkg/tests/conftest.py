import pytest

from omvar import fixtures


@pytest.fixture(scope="session")
def f1():
    return fixtures.F1()


@pytest.fixture(scope="session")
def f2():
    return fixtures.F2()


@pytest.fixture(scope="session")
def f3():
    return fixtures.F3()


@pytest.fixture(scope="session")
def f4():
    return fixtures.F4()


@pytest.fixture(scope="session")
def ap():
    return fixtures.antiparallel()
