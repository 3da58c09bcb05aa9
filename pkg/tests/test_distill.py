import numpy as np
import pytest

from concbound import (ValidationError, builtin, from_pure, is_npt,
                       max_entangled, npt_block_witness, reduction_violated,
                       tau22_criterion, verdict)
from conftest import random_product_state


def test_is_npt_maximally_entangled():
    flag, mineig = is_npt(builtin("maxent", d=2))
    assert flag
    assert abs(mineig + 0.5) <= 1e-12


def test_is_npt_separable(rng):
    flag, _ = is_npt(random_product_state(2, 3, rng))
    assert not flag


def test_is_npt_sigma_alpha_regimes():
    assert not is_npt(builtin("sigma_alpha", alpha=3.5))[0]
    assert is_npt(builtin("sigma_alpha", alpha=4.5))[0]


def test_reduction_fires_on_rho2():
    # published claims for this family say the reduction criterion stays
    # silent; for the state as printed the B-side operator genuinely has a
    # negative eigenvalue, so the criterion fires (see the README)
    for p in (0.3, 0.6, 0.9):
        flag, mineig = reduction_violated(builtin("rho2", p=p))
        assert flag
        assert mineig < -1e-3


def test_reduction_on_isotropic_states():
    assert reduction_violated(builtin("isotropic", d=3, w=0.95))[0]
    assert reduction_violated(builtin("isotropic", d=3, w=0.9))[0]
    assert not reduction_violated(builtin("isotropic", d=3, w=0.2))[0]
    assert not reduction_violated(builtin("isotropic", d=3, w=0.0))[0]


def test_witness_rho2_first_copy():
    for p in (0.3, 0.6, 0.9):
        w = npt_block_witness(builtin("rho2", p=p), max_copies=2)
        assert w is not None
        assert w.copies == 1
        assert w.orientation == "2x3"
        assert w.rows == (0, 1) and w.cols == (0, 1, 2)
        assert abs(w.min_pt_eig + p / 6) <= 1e-12


def test_witness_two_qubit_input_caps_orientation():
    w = npt_block_witness(builtin("maxent", d=2), max_copies=1)
    assert w is not None
    assert w.copies == 1
    assert w.orientation == "2x2"


def test_witness_separable_silent(rng):
    assert npt_block_witness(random_product_state(2, 2, rng), max_copies=2) is None
    assert npt_block_witness(builtin("isotropic", d=3, w=0.1), max_copies=2) is None


def test_witness_ppt_inputs_silent_without_rotations():
    for alpha in (3.2, 3.5, 4.0):
        state = builtin("sigma_alpha", alpha=alpha)
        assert npt_block_witness(state, max_copies=1, rotations=0) is None


def test_witness_rotations_deterministic():
    state = builtin("sigma_alpha", alpha=4.5)
    a = npt_block_witness(state, max_copies=1, rotations=3, seed=42)
    b = npt_block_witness(state, max_copies=1, rotations=3, seed=42)
    assert a == b
    assert a is not None


def test_witness_input_guards():
    with pytest.raises(ValidationError):
        npt_block_witness(builtin("maxent", d=2), max_copies=0)


def test_tau22_criterion_rho2_silent():
    for p in (0.3, 0.6, 0.9):
        fires, at = tau22_criterion(builtin("rho2", p=p), max_copies=2)
        assert not fires and at is None


def test_tau22_criterion_fires_on_maxent():
    fires, at = tau22_criterion(builtin("maxent", d=2), max_copies=1)
    assert fires and at == 1


def test_tau22_criterion_consistent_with_npt():
    state = builtin("sigma_alpha", alpha=4.5)
    fires, _ = tau22_criterion(state, max_copies=1)
    if fires:
        assert is_npt(state)[0]


def test_tau22_implies_witness():
    cases = [builtin("maxent", d=2), builtin("maxent", d=3),
             builtin("isotropic", d=3, w=0.95),
             builtin("sigma_alpha", alpha=4.5), builtin("rho2", p=0.6)]
    for state in cases:
        fires, _ = tau22_criterion(state, max_copies=2)
        if fires:
            assert npt_block_witness(state, max_copies=2) is not None


def test_verdict_rho2():
    v = verdict(builtin("rho2", p=0.6), max_copies=2)
    assert v.decision == "yes"
    assert v.criteria["npt_block"]
    assert not v.criteria["tau22"]
    assert v.criteria["reduction"]  # fires for the state as printed
    assert v.witness is not None and v.witness.copies == 1


def test_verdict_maximally_mixed_unknown():
    v = verdict(builtin("isotropic", d=3, w=0.0), max_copies=2)
    assert v.decision == "unknown"
    assert not any(v.criteria.values())
    assert v.witness is None


def test_verdict_isotropic_reduction():
    v = verdict(builtin("isotropic", d=3, w=0.95), max_copies=1)
    assert v.decision == "yes"
    assert v.criteria["reduction"]


def test_verdict_never_yes_on_separable(rng):
    for _ in range(5):
        v = verdict(random_product_state(2, 3, rng), max_copies=2)
        assert v.decision == "unknown"
