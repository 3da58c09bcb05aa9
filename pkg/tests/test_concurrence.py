import numpy as np
import pytest

from concbound import (BipartiteState, DimensionError, PureState, RoofOptions,
                       Selector, ValidationError, basis_ket, builtin,
                       from_pure, max_entangled, pure_concurrence,
                       pure_concurrence_minors, roof_estimate, wootters)
from concbound.linalg import partial_transpose, trace_norm
from conftest import haar_pure, random_density, random_state


def test_pure_concurrence_values():
    assert pure_concurrence(basis_ket(0, 0, 2, 2)) == 0.0
    assert abs(pure_concurrence(max_entangled(2)) - 1.0) <= 1e-12
    assert abs(pure_concurrence(max_entangled(3)) - 2 / np.sqrt(3)) <= 1e-12


def test_two_formulas_agree(rng):
    for _ in range(100):
        psi = haar_pure(rng.integers(2, 5), rng.integers(2, 5), rng)
        assert abs(pure_concurrence(psi)
                   - pure_concurrence_minors(psi.coeffs)) <= 1e-10


def test_minors_full_selector():
    full = Selector((0, 1, 2), (0, 1, 2))
    got = pure_concurrence_minors(max_entangled(3).coeffs, full)
    assert abs(got - 2 / np.sqrt(3)) <= 1e-12


def test_minors_two_level_block():
    # coefficients sqrt(p/3)(|00> + |11>): a single minor of value p/3
    p = 0.7
    coeffs = np.zeros((2, 2), dtype=complex)
    coeffs[0, 0] = coeffs[1, 1] = np.sqrt(p / 3)
    assert abs(pure_concurrence_minors(coeffs) - 2 * p / 3) <= 1e-12


def test_minors_rank_one_vanishes(rng):
    a = rng.standard_normal((3, 4)) + 1j * rng.standard_normal((3, 4))
    b = rng.standard_normal(4) + 1j * rng.standard_normal(4)
    rank_one = np.outer(a[:, 0], b)
    assert pure_concurrence_minors(rank_one) <= 1e-12


def test_wootters_maximally_entangled_and_product():
    assert abs(wootters(from_pure(max_entangled(2)).mat) - 1.0) <= 1e-12
    assert wootters(from_pure(basis_ket(1, 0, 2, 2)).mat) <= 1e-12


def test_wootters_werner_family():
    bell = from_pure(max_entangled(2)).mat
    for w in (0.0, 1 / 3, 0.6, 1.0):
        rho = w * bell + (1 - w) * np.eye(4) / 4
        expected = max(0.0, (3 * w - 1) / 2)
        assert abs(wootters(rho) - expected) <= 1e-10


def test_wootters_homogeneous(rng):
    rho = random_density(4, rng)
    base = wootters(rho)
    for c in (0.1, 0.5, 2.0):
        assert abs(wootters(c * rho) - c * base) <= 1e-10


def test_wootters_dominates_pt_norm(rng):
    for _ in range(200):
        rho = random_density(4, rng)
        neg = trace_norm(partial_transpose(rho, (2, 2))) - 1.0
        assert wootters(rho) >= neg - 1e-9


def test_wootters_shape_check():
    with pytest.raises(DimensionError):
        wootters(np.eye(9))


def test_roof_pure_state_exact(rng):
    psi = haar_pure(3, 3, rng)
    res = roof_estimate(from_pure(psi))
    assert res.converged
    assert len(res.ensemble) == 1
    assert abs(res.value - pure_concurrence(psi)) <= 1e-10


def test_roof_separable_diagonal():
    diag = np.diag(np.linspace(0.05, 0.2, 9))
    diag /= np.trace(diag)
    res = roof_estimate(BipartiteState(diag.astype(complex), 3, 3))
    assert res.value <= 1e-6


def test_roof_matches_wootters(rng):
    opts = RoofOptions(ensemble_size=8, restarts=10, seed=3)
    for _ in range(15):
        rho = random_density(4, rng)
        res = roof_estimate(BipartiteState(rho, 2, 2), opts)
        w = wootters(rho)
        assert res.value >= w - 1e-9  # roof never undershoots the exact value
        assert res.value - w <= 1e-3


def test_roof_deterministic_for_fixed_seed(rng):
    state = random_state(2, 2, rng)
    opts = RoofOptions(ensemble_size=6, restarts=4, seed=11)
    a = roof_estimate(state, opts)
    b = roof_estimate(state, opts)
    assert a.value == b.value
    assert a.converged == b.converged


def test_roof_ensemble_reconstructs_input(rng):
    state = random_state(2, 2, rng)
    res = roof_estimate(state, RoofOptions(restarts=3))
    acc = np.zeros((4, 4), dtype=complex)
    total = 0.0
    for weight, psi in res.ensemble:
        v = psi.vector()
        acc += weight * np.outer(v, v.conj())
        total += weight * pure_concurrence(psi)
    assert np.abs(acc - state.mat).max() <= 1e-8
    assert abs(total - res.value) <= 1e-10


def test_roof_no_worse_than_eigendecomposition(rng):
    rho = random_density(4, rng)
    ev, vec = np.linalg.eigh(rho)
    initial = sum(lam * pure_concurrence(PureState(v.reshape(2, 2) / np.linalg.norm(v)))
                  for lam, v in zip(ev, vec.T) if lam > 1e-12)
    res = roof_estimate(BipartiteState(rho, 2, 2), RoofOptions(restarts=2))
    assert res.value <= initial + 1e-12


def test_roof_unnormalized_input_scales(rng):
    rho = random_density(4, rng)
    opts = RoofOptions(ensemble_size=8, restarts=4, seed=5)
    full = roof_estimate(BipartiteState(rho, 2, 2), opts).value
    scaled = roof_estimate(BipartiteState(0.25 * rho, 2, 2, normalized=False), opts).value
    assert abs(scaled - 0.25 * full) <= 1e-6


def test_roof_sweep_cap_reports_nonconvergence(rng):
    rho = random_density(4, rng)
    res = roof_estimate(BipartiteState(rho, 2, 2),
                        RoofOptions(restarts=1, max_sweeps=1, seed=1))
    assert res.value >= wootters(rho) - 1e-9  # still a valid upper estimate


def test_roof_input_guards(rng):
    with pytest.raises(DimensionError):
        roof_estimate(BipartiteState(np.eye(36) / 36, 6, 6))
    with pytest.raises(ValidationError):
        roof_estimate(builtin("rho2", p=0.8))  # not PSD
    with pytest.raises(ValidationError):
        roof_estimate(random_state(2, 2, rng), RoofOptions(ensemble_size=2))
