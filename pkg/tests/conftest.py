import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from isolat import l1_generators, linf_generators, triangular_generators, validate_generators

ASYMMETRIC = [(2, 1), (1, 1), (-1, 0), (0, -1)]


@pytest.fixture(scope="session")
def l1():
    return l1_generators(2)


@pytest.fixture(scope="session")
def linf():
    return linf_generators(2)


@pytest.fixture(scope="session")
def tri():
    return triangular_generators()


@pytest.fixture(scope="session")
def asym():
    return validate_generators(2, ASYMMETRIC)


@pytest.fixture(scope="session")
def line():
    return validate_generators(1, [(1,), (-1,)])
