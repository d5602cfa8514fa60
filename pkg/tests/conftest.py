import pytest

from cli.fixtures import load_fixture


@pytest.fixture
def c4():
    return load_fixture("C4")


@pytest.fixture
def c5():
    return load_fixture("C5")


@pytest.fixture
def c6():
    return load_fixture("C6")


@pytest.fixture
def k3():
    return load_fixture("K3")


@pytest.fixture
def p3():
    return load_fixture("P3")


@pytest.fixture
def bowtie():
    return load_fixture("BOWTIE")


@pytest.fixture
def sus4():
    return load_fixture("SUS4")


@pytest.fixture
def g7():
    return load_fixture("G7")
