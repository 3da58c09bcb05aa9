import numpy as np
import pytest

from concbound import BipartiteState, PureState


def haar_pure(m, n, rng):
    """Haar-random normalized pure state as a PureState."""
    c = rng.standard_normal((m, n)) + 1j * rng.standard_normal((m, n))
    return PureState(c / np.linalg.norm(c))


def random_density(d, rng, rank=None):
    """Random density matrix (Wishart), optionally rank-limited."""
    rank = rank or d
    g = rng.standard_normal((d, rank)) + 1j * rng.standard_normal((d, rank))
    rho = g @ g.conj().T
    return rho / np.trace(rho).real


def random_state(m, n, rng, rank=None):
    return BipartiteState(random_density(m * n, rng, rank), m, n)


def random_product_state(m, n, rng, terms=4):
    """Random separable state: mixture of product projectors."""
    rho = np.zeros((m * n, m * n), dtype=complex)
    for _ in range(terms):
        a = rng.standard_normal(m) + 1j * rng.standard_normal(m)
        b = rng.standard_normal(n) + 1j * rng.standard_normal(n)
        v = np.kron(a / np.linalg.norm(a), b / np.linalg.norm(b))
        rho += rng.random() * np.outer(v, v.conj())
    rho /= np.trace(rho).real
    return BipartiteState(rho, m, n)


@pytest.fixture
def rng():
    return np.random.default_rng(20240817)
