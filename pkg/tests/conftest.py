from __future__ import annotations

import numpy as np
import pytest

from closure14 import MultiplierState, sample_rational_state, sample_state


@pytest.fixture
def rng():
    return np.random.default_rng(20250810)


@pytest.fixture
def random_states(rng):
    return [sample_state(rng) for _ in range(25)]


@pytest.fixture
def random_rational_states(rng):
    return [sample_rational_state(rng) for _ in range(10)]


@pytest.fixture
def zero_state():
    return MultiplierState.zero()


def random_rotation(rng):
    """Haar-ish random orthogonal matrix from a QR factorization."""
    q, r = np.linalg.qr(rng.standard_normal((3, 3)))
    q = q * np.sign(np.diag(r))
    return tuple(tuple(float(x) for x in row) for row in q)
