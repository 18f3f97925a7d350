import numpy as np
import pytest

from tritangle import PureState

R2 = 1.0 / np.sqrt(2.0)
R3 = 1.0 / np.sqrt(3.0)


@pytest.fixture
def ghz():
    return PureState(np.array([R2, 0, 0, 0, 0, 0, 0, R2], dtype=complex))


@pytest.fixture
def w_state():
    return PureState(np.array([0, R3, R3, 0, R3, 0, 0, 0], dtype=complex))


@pytest.fixture
def psi_minus():
    # (|100> + |001>)/sqrt(2): B separable from an AC Bell pair
    return PureState(np.array([0, R2, 0, 0, R2, 0, 0, 0], dtype=complex))


@pytest.fixture
def psi_plus():
    # (|100> + |010>)/sqrt(2): C separable from an AB Bell pair
    return PureState(np.array([0, 0, R2, 0, R2, 0, 0, 0], dtype=complex))


@pytest.fixture
def rng():
    return np.random.default_rng(20240809)


def random_amplitudes(rng, n=None):
    shape = (8,) if n is None else (n, 8)
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_state(rng):
    return PureState(random_amplitudes(rng))
