import pytest

from absorb_lab.harness.corpus import DEFAULT_BOUNDS, Bounds, generate_corpus

SMALL = Bounds(8, 16, 1)


@pytest.fixture(scope="session")
def corpus():
    return generate_corpus(DEFAULT_BOUNDS)


@pytest.fixture(scope="session")
def small_corpus():
    return generate_corpus(SMALL)
