"""Certified lower bounds of squared concurrence, built from sub-block
projections, and the roof-based (uncertified) sub-block estimate.

Every certified bound reports C^2(rho); callers wanting C take the square
root.  Per-block primitive values are clamped at zero before squaring,
since they are analytically nonnegative for positive blocks and roundoff
must not leak in through the square.
"""
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .concurrence import RoofOptions, roof_estimate, wootters
from .errors import DimensionError, ValidationError
from .states import BipartiteState
from .subspace import (ZERO_BLOCK_TRACE, Selector, project, selectors,
                       subspace_coefficient)

CERTIFIED_KINDS = ("tau22", "kappa", "zeta", "chen_global", "combined")
ALL_KINDS = CERTIFIED_KINDS + ("tau_roof_estimate",)


@dataclass(frozen=True)
class BoundReport:
    """One evaluated bound: its kind, block sizes, value and per-block terms.

    ``value_sq`` is a certified lower bound on C^2 except for
    kind="tau_roof_estimate", which is an estimate (certified=False).
    """

    kind: str
    s: int
    t: int
    value_sq: float
    blocks: tuple = field(default=())
    certified: bool = True

    @property
    def value(self):
        return float(np.sqrt(max(0.0, self.value_sq)))


def primitive_norm_bound(block, use_realign):
    """max(||block^T_A||, ||R(block)|| if requested) - tr(block), clamped at 0."""
    if not isinstance(block, BipartiteState):
        raise DimensionError("primitive_norm_bound expects a BipartiteState block")
    tr = block.trace()
    v = linalg.trace_norm(linalg.partial_transpose(block.mat, block.dims)) - tr
    if use_realign:
        v = max(v, linalg.trace_norm(linalg.realign(block.mat, block.dims)) - tr)
    return max(0.0, v)


def _norm_bound_sum(state, s, t, use_realign):
    """Blockwise primitive sum with the Breuer-form prefactor folded in."""
    # the prefactor uses the smaller block side; when the caller's (s, t)
    # has t > s the subsystems are exchanged (the bound is swap-symmetric)
    if t > s:
        swapped = _norm_bound_sum(state.swap(), t, s, use_realign)
        return [(Selector(sel.cols, sel.rows), c) for sel, c in swapped]
    c_st = float(subspace_coefficient(state.m, state.n, s, t))
    pref = 2.0 * c_st / (t * (t - 1))
    out = []
    for sel in selectors(state.m, state.n, s, t):
        block = project(state, sel)
        if block.trace() < ZERO_BLOCK_TRACE:
            out.append((sel, 0.0))
            continue
        v = primitive_norm_bound(block, use_realign)
        out.append((sel, pref * v * v))
    return out


def kappa(state, s, t):
    """Partial-transpose blockwise bound on C^2."""
    blocks = _norm_bound_sum(state, s, t, use_realign=False)
    return BoundReport("kappa", s, t, sum(c for _, c in blocks), tuple(blocks))


def zeta(state, s, t):
    """Blockwise bound using the larger of the PT and realignment norms."""
    blocks = _norm_bound_sum(state, s, t, use_realign=True)
    return BoundReport("zeta", s, t, sum(c for _, c in blocks), tuple(blocks))


def tau22(state):
    """Sum of squared exact two-qubit concurrences over all 2x2 sub-blocks."""
    blocks = []
    for sel in selectors(state.m, state.n, 2, 2):
        block = project(state, sel)
        if block.trace() < ZERO_BLOCK_TRACE:
            blocks.append((sel, 0.0))
            continue
        w = wootters(block.mat)
        blocks.append((sel, w * w))
    return BoundReport("tau22", 2, 2, sum(c for _, c in blocks), tuple(blocks))


def chen_global(state):
    """Global norm bound (2/(q(q-1))) (max(||rho^T_A||, ||R(rho)||) - 1)^2.

    q is the smaller local dimension; requires a unit-trace state.
    """
    tr = state.trace()
    if abs(tr - 1.0) > 1e-8:
        raise ValidationError(f"chen_global needs a unit-trace state, got tr={tr}")
    q = min(state.dims)
    v = max(0.0, max(linalg.trace_norm(linalg.partial_transpose(state.mat, state.dims)),
                     linalg.trace_norm(linalg.realign(state.mat, state.dims))) - 1.0)
    full = Selector(tuple(range(state.m)), tuple(range(state.n)))
    value = 2.0 / (q * (q - 1)) * v * v
    return BoundReport("chen_global", state.m, state.n, value, ((full, value),))


def _tau22_sum(state, s, t):
    """c_st * sum over s x t blocks of tau22(block); homogeneous in the block."""
    c_st = float(subspace_coefficient(state.m, state.n, s, t))
    out = []
    for sel in selectors(state.m, state.n, s, t):
        block = project(state, sel)
        if block.trace() < ZERO_BLOCK_TRACE:
            out.append((sel, 0.0))
            continue
        out.append((sel, c_st * tau22(block).value_sq))
    return out


def combined(state, weights=None, inner=None):
    """Convex combination of blockwise bounds over (s, t) and bound kinds.

    ``weights`` maps (s, t) -> probability (default: uniform over all
    admissible sizes); ``inner`` maps kind -> probability over
    {"kappa", "zeta", "tau22"} (default: uniform over kappa and zeta).
    Certified since every inner kind is certified.
    """
    m, n = state.dims
    if weights is None:
        sts = [(s, t) for s in range(2, m + 1) for t in range(2, n + 1)]
        weights = {st: 1.0 / len(sts) for st in sts}
    if inner is None:
        inner = {"kappa": 0.5, "zeta": 0.5}
    for name, table in (("weights", weights), ("inner", inner)):
        total = sum(table.values())
        if abs(total - 1.0) > 1e-12:
            raise ValidationError(f"{name} must sum to 1, got {total!r}")
        if any(v < 0 for v in table.values()):
            raise ValidationError(f"{name} must be nonnegative")
    evaluators = {
        "kappa": lambda st: kappa(state, *st).blocks,
        "zeta": lambda st: zeta(state, *st).blocks,
        "tau22": lambda st: _tau22_sum(state, *st),
    }
    unknown = set(inner) - set(evaluators)
    if unknown:
        raise ValidationError(f"unknown inner bound kinds {sorted(unknown)}")
    merged = {}
    total = 0.0
    for (s, t), p_st in weights.items():
        if not (2 <= s <= m and 2 <= t <= n):
            raise DimensionError(f"weight key (s={s}, t={t}) inadmissible for {m}x{n}")
        if p_st == 0.0:
            continue
        for kind, q_k in inner.items():
            if q_k == 0.0:
                continue
            for sel, c in evaluators[kind]((s, t)):
                term = p_st * q_k * c
                merged[sel] = merged.get(sel, 0.0) + term
                total += term
    blocks = tuple(sorted(merged.items()))
    return BoundReport("combined", 0, 0, total, blocks)


def tau_roof_estimate(state, s, t, opts=None):
    """Sub-block aggregate c_st * sum roof_estimate(block)^2 (not certified).

    The per-block roof estimator upper-estimates each block concurrence,
    so the aggregate is an estimate of the blockwise bound, not a certified
    lower bound on C^2.
    """
    opts = opts or RoofOptions()
    c_st = float(subspace_coefficient(state.m, state.n, s, t))
    blocks = []
    converged = True
    for sel in selectors(state.m, state.n, s, t):
        block = project(state, sel)
        if block.trace() < ZERO_BLOCK_TRACE:
            blocks.append((sel, 0.0))
            continue
        res = roof_estimate(block, opts)
        converged = converged and res.converged
        blocks.append((sel, c_st * res.value ** 2))
    report = BoundReport("tau_roof_estimate", s, t,
                         sum(c for _, c in blocks), tuple(blocks),
                         certified=False)
    return report, converged


def evaluate_all(state, roof=False, opts=None):
    """Every certified bound at every admissible (s, t), plus the global one."""
    m, n = state.dims
    reports = [tau22(state), chen_global(state)]
    for s in range(2, m + 1):
        for t in range(2, n + 1):
            reports.append(kappa(state, s, t))
            reports.append(zeta(state, s, t))
            if roof:
                reports.append(tau_roof_estimate(state, s, t, opts)[0])
    return reports
