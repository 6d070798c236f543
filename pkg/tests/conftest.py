import math

import pytest

from qaskey import AWParams, Family, FamilySpec, ParameterChain

# The parameter set used throughout the acceptance criteria.
A, B, C, D, Q = 0.3, 0.2, -0.4, 0.1, 0.5


@pytest.fixture
def aw_params():
    return AWParams(A, B, C, D, Q)


@pytest.fixture
def chain2():
    return ParameterChain(Q, A, B, C, D, (0.5,))


@pytest.fixture
def chain3():
    return ParameterChain(Q, A, B, C, D, (0.5, 0.3))


@pytest.fixture
def spec2(chain2):
    return FamilySpec(Family.AW, chain2)


def rel(x, y):
    return abs(x - y) / abs(y)


THETA2 = (math.pi / 3, 2 * math.pi / 5)
