import numpy as np
import pytest

from geoquant.correspondence import ComplexStructure
from geoquant.phase_space import build_phase_space, standard_phase_space
from geoquant.spans import Quantization

E1_T = np.array([[0.0, 0.0], [1.0, 0.0]])
J0 = np.array([[0.0, 1.0], [-1.0, 0.0]])
J2 = np.array([[-1.0, 1.0], [-2.0, 1.0]])


def jm(m):
    return np.array([[0.0, 1.0 / m], [-m, 0.0]])


@pytest.fixture
def e1():
    return build_phase_space(E1_T)


@pytest.fixture
def q0(e1):
    """E1 with the standard complex structure J0 (so Omega = 1)."""
    return Quantization(e1, J=ComplexStructure(J0))


@pytest.fixture
def block2():
    return standard_phase_space(2)


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)
