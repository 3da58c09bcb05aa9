"""Concurrence: pure-state formulas, the exact two-qubit value, and a
numerical convex-roof upper estimator for small mixed states."""
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from ._kernels import ensemble_value, minors_sq_sum, run_sweep
from .errors import DimensionError, NumericalError, ValidationError
from .states import BipartiteState, PureState

#: eigenvalues below this are dropped from the support of the roof target
SUPPORT_CUTOFF = 1e-12

#: eigenvalues of the spin-flip product in [-WOOTTERS_FLOOR, 0) are clamped
WOOTTERS_FLOOR = 1e-10

_YY = np.kron(linalg.PAULI_Y, linalg.PAULI_Y)


def pure_concurrence(psi):
    """Concurrence sqrt(2 (1 - tr rho_A^2)) of a normalized pure state."""
    psi.require_normalized()
    a = psi.coeffs
    rho_a = a @ a.conj().T
    purity = float(np.real(np.trace(rho_a @ rho_a)))
    return float(np.sqrt(max(0.0, 2.0 * (1.0 - purity))))


def pure_concurrence_minors(coeffs, selector=None):
    """Minor-form concurrence 2 sqrt(sum |a_ij a_kl - a_il a_kj|^2).

    Accepts unnormalized coefficient matrices (the value is homogeneous of
    degree 2 in the coefficients); with a selector, the sum runs over the
    selected sub-block only.
    """
    a = linalg.as_complex_matrix(coeffs)
    if selector is not None:
        if selector.rows[-1] >= a.shape[0] or selector.cols[-1] >= a.shape[1]:
            raise DimensionError(
                f"selector {selector} out of range for shape {a.shape}")
        a = a[np.ix_(selector.rows, selector.cols)]
    return 2.0 * float(np.sqrt(minors_sq_sum(a)))


def wootters(rho):
    """Exact two-qubit concurrence max(0, l1 - l2 - l3 - l4).

    The l_i are the decreasing square roots of the eigenvalues of
    rho (Y x Y) conj(rho) (Y x Y).  Degree-1 homogeneous, so unnormalized
    blocks are fine.
    """
    if isinstance(rho, BipartiteState):
        if rho.dims != (2, 2):
            raise DimensionError(f"wootters needs a 2x2 bipartite state, got {rho.dims}")
        rho = rho.mat
    rho = linalg.as_complex_matrix(rho)
    if rho.shape != (4, 4):
        raise DimensionError(f"wootters needs a 4x4 matrix, got {rho.shape}")
    prod = rho @ _YY @ rho.conj() @ _YY
    try:
        ev = np.linalg.eigvals(prod)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver failed: {exc}") from exc
    ev = np.real(ev)
    scale = max(1.0, float(np.abs(ev).max()))
    if ev.min() < -WOOTTERS_FLOOR * scale:
        raise NumericalError(
            f"spin-flip product has eigenvalue {ev.min():.3e}, below the clamp floor")
    lam = np.sqrt(np.sort(np.clip(ev, 0.0, None))[::-1])
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


@dataclass(frozen=True)
class RoofOptions:
    """Knobs for :func:`roof_estimate`.

    ensemble_size=None picks min(r^2, 2r + 4) for a rank-r target; an
    explicit value must be at least the rank.
    """

    ensemble_size: int = None
    restarts: int = 10
    max_sweeps: int = 500
    tol: float = 1e-10
    seed: int = 0
    grid: int = 32
    refine_rounds: int = 6
    refine_iters: int = 40


@dataclass(frozen=True)
class RoofResult:
    """Outcome of the ensemble optimization.

    ``value`` is an upper estimate of the concurrence (scaled by the trace
    for unnormalized input); ``ensemble`` is the achieving decomposition as
    (weight, PureState) pairs with sum_i w_i |psi_i><psi_i| equal to the
    input; ``converged`` is False when the sweep cap was hit.
    """

    value: float
    ensemble: tuple
    converged: bool
    sweeps: int = field(default=0)


def _ensemble_result(V, m, n, converged, sweeps):
    members = []
    for row in V:
        w = float(np.vdot(row, row).real)
        if w < 1e-14:
            continue
        members.append((w, PureState((row / np.sqrt(w)).reshape(m, n))))
    value = ensemble_value(V, m, n)
    return RoofResult(value, tuple(members), converged, sweeps)


def roof_estimate(state, opts=None):
    """Upper-estimate the convex-roof concurrence of a small mixed state.

    The target is factored over its eigenvalue support and the decomposition
    is parametrized by an isometry applied to the weighted eigenvectors.
    Jacobi-style pairwise sweeps then mix ensemble members two at a time:
    single-minor (two-qubit) pairs are solved in closed form, larger blocks
    by a coarse angle grid plus golden-section refinement.  The reported
    value is the minimum over restarts, each seeded deterministically, so
    results are reproducible for a fixed seed.

    Accepts unnormalized PSD input (trace t contributes a factor t to the
    value).  Dimensions are capped at 5x5 locals to bound cost.
    """
    opts = opts or RoofOptions()
    m, n = state.dims
    if m > 5 or n > 5:
        raise DimensionError(
            f"roof_estimate is limited to local dimensions <= 5, got {m}x{n}")
    ev, vec = np.linalg.eigh(0.5 * (state.mat + state.mat.conj().T))
    scale = max(1.0, float(np.abs(ev).max()))
    if ev[0] < -1e-8 * scale:
        raise ValidationError(
            f"roof target is not PSD: min eigenvalue {ev[0]:.3e}")
    keep = ev > SUPPORT_CUTOFF
    lam, vec = ev[keep], vec[:, keep]
    rank = int(lam.size)
    if rank == 0:
        return RoofResult(0.0, (), True, 0)
    roots = (np.sqrt(lam)[None, :] * vec).T  # rank x dim, rows are weighted eigvectors
    if rank == 1:
        return _ensemble_result(np.ascontiguousarray(roots), m, n, True, 0)
    k = opts.ensemble_size
    if k is None:
        k = min(rank * rank, 2 * rank + 4)
    elif k < rank:
        raise ValidationError(
            f"ensemble_size {k} is below the target rank {rank}")
    pairs = np.array([(i, j) for i in range(k) for j in range(i + 1, k)],
                     dtype=np.int64)
    best = None
    for restart in range(max(1, opts.restarts)):
        rng = np.random.default_rng((opts.seed, restart))
        if restart == 0:
            iso = np.eye(k, rank, dtype=complex)
        else:
            g = rng.standard_normal((k, rank)) + 1j * rng.standard_normal((k, rank))
            iso, _ = np.linalg.qr(g)
        V = np.ascontiguousarray(iso @ roots)
        converged = False
        sweeps = 0
        for _ in range(opts.max_sweeps):
            sweeps += 1
            order = np.ascontiguousarray(pairs[rng.permutation(len(pairs))])
            improvement = run_sweep(V, m, n, order, rng.random(),
                                    opts.grid, opts.grid,
                                    opts.refine_rounds, opts.refine_iters)
            if improvement < opts.tol or ensemble_value(V, m, n) <= opts.tol:
                converged = True
                break
        candidate = _ensemble_result(V, m, n, converged, sweeps)
        if best is None or candidate.value < best.value:
            best = candidate
        if best.converged and best.value <= opts.tol:
            break  # the objective is nonnegative; nothing left to gain
    return best
