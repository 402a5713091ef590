import numpy as np
import pytest

from planar_squeezing.bound_solver import BoundSolver
from planar_squeezing.spin_core import as_spin

# Published C_J values, rounded as printed
TABULATED_BOUNDS = {
    0.5: 0.25,
    1: 0.4375,
    1.5: 0.6009,
    2: 0.7496,
    2.5: 0.8877,
    3: 1.018,
    3.5: 1.142,
    4: 1.260,
    5: 1.484,
    6: 1.695,
    7: 1.894,
    10: 2.445,
    20: 3.984,
    50: 7.503,
}


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def solver():
    return BoundSolver(seed=0)


@pytest.fixture(scope="session")
def exact_bound(solver):
    """Cached cj_exact(j, direct=False) results keyed by spin."""
    cache = {}

    def lookup(j):
        j = as_spin(j)
        if j not in cache:
            cache[j] = solver.cj_exact(j, direct=False)
        return cache[j]

    return lookup
