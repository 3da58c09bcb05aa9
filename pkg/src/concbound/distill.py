"""Sufficient distillability detection.

Three criteria are evaluated and aggregated:

* ``npt_block``  — some 2x3 (or 3x2) sub-block of the N-copy state has a
  non-positive partial transpose.  Entangled 2x3 states are distillable,
  so a hit certifies distillability of the input.
* ``tau22``      — the summed two-qubit sub-block bound of some N-copy
  state is positive (a strictly weaker sufficient condition).
* ``reduction``  — rho_A x I - rho or I x rho_B - rho has a negative
  eigenvalue.

A verdict is "yes" when any criterion fires and "unknown" otherwise; the
criteria are sufficient only, so "no" is never claimed.
"""
import itertools
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import ValidationError
from .states import BipartiteState, tensor_copies

#: absolute eigenvalue threshold below which a partial transpose counts as negative
NPT_TOL = 1e-9

#: cap on how many sub-blocks are eigensolved per batch (memory guard)
_SCAN_CHUNK = 4096


def is_npt(state, tol=NPT_TOL):
    """(flag, min PT eigenvalue); flag is True when the PT is negative.

    The threshold scales with the trace so unnormalized blocks are judged
    consistently.
    """
    mineig = linalg.min_eigenvalue(linalg.partial_transpose(state.mat, state.dims))
    scale = max(state.trace(), 1e-300)
    return mineig < -tol * scale, mineig


def reduction_violated(state, tol=NPT_TOL):
    """(flag, min eigenvalue) of the two reduction operators.

    Checks rho_A x I - rho and I x rho_B - rho; a negative eigenvalue on
    either side is a sufficient condition for distillability.
    """
    m, n = state.dims
    rho_a = linalg.partial_trace(state.mat, state.dims, side="B")
    rho_b = linalg.partial_trace(state.mat, state.dims, side="A")
    e1 = linalg.min_eigenvalue(np.kron(rho_a, np.eye(n)) - state.mat)
    e2 = linalg.min_eigenvalue(np.kron(np.eye(m), rho_b) - state.mat)
    mineig = min(e1, e2)
    return mineig < -tol, mineig


@dataclass(frozen=True)
class Witness:
    """A sub-block of an N-copy state whose partial transpose is negative."""

    copies: int
    rows: tuple
    cols: tuple
    orientation: str
    min_pt_eig: float
    rotation: int = 0


@dataclass(frozen=True)
class DistillVerdict:
    """Aggregated decision: "yes" when any criterion fires, else "unknown"."""

    decision: str
    witness: Witness = None
    criteria: dict = field(default_factory=dict)


def _block_spectra_min(pt_mat, dim_b, row_combos, col_combos):
    """Min PT eigenvalue per (row combo, col combo), lexicographic layout."""
    n_r, n_c = len(row_combos), len(col_combos)
    rows = np.asarray(row_combos)
    cols = np.asarray(col_combos)
    # composite indices of each block, shape (n_r, n_c, s*t)
    flat = (rows[:, None, :, None] * dim_b + cols[None, :, None, :])
    flat = flat.reshape(n_r, n_c, -1)
    out = np.empty((n_r, n_c))
    chunk = max(1, _SCAN_CHUNK // max(1, n_c))
    for lo in range(0, n_r, chunk):
        part = flat[lo:lo + chunk]
        blocks = pt_mat[part[..., :, None], part[..., None, :]]
        out[lo:lo + chunk] = np.linalg.eigvalsh(blocks)[..., 0]
    return out


def _capped_orientations(dim_a, dim_b):
    # the projector ranks cap at the local dimensions
    shapes = [(min(2, dim_a), min(3, dim_b)), (min(3, dim_a), min(2, dim_b))]
    seen = []
    for shape in shapes:
        if shape not in seen:
            seen.append(shape)
    return seen


def _scan_copies_state(copies_state, copies, tol, rotation):
    dim_a, dim_b = copies_state.dims
    pt = linalg.partial_transpose(copies_state.mat, copies_state.dims)
    scale = max(copies_state.trace(), 1e-300)
    for s, t in _capped_orientations(dim_a, dim_b):
        row_combos = list(itertools.combinations(range(dim_a), s))
        col_combos = list(itertools.combinations(range(dim_b), t))
        mins = _block_spectra_min(pt, dim_b, row_combos, col_combos)
        hits = np.argwhere(mins < -tol * scale)
        if hits.size:
            r, c = hits[0]  # argwhere is row-major, i.e. lexicographic
            return Witness(copies, row_combos[r], col_combos[c],
                           f"{s}x{t}", float(mins[r, c]), rotation)
    return None


def _random_local_rotation(state, rng):
    def haar(d):
        g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
        q, r = np.linalg.qr(g)
        return q * (np.diag(r) / np.abs(np.diag(r)))

    u = np.kron(haar(state.m), haar(state.n))
    return BipartiteState(u @ state.mat @ u.conj().T, state.m, state.n,
                          state.normalized)


def npt_block_witness(state, max_copies=2, rotations=0, seed=0, tol=NPT_TOL):
    """First NPT 2x3 / 3x2 sub-block over N-copy states, or None.

    Search order is deterministic: copies ascending, 2x3 before 3x2,
    selectors lexicographic.  With rotations > 0 the whole sweep repeats
    after seeded random local basis changes, a strict search enhancement.
    """
    if state.trace() < 1e-14:
        raise ValidationError("state trace is numerically zero")
    if max_copies < 1:
        raise ValidationError(f"max_copies must be >= 1, got {max_copies}")
    for rotation in range(rotations + 1):
        if rotation == 0:
            base = state
        else:
            rng = np.random.default_rng((seed, rotation))
            base = _random_local_rotation(state, rng)
        for copies in range(1, max_copies + 1):
            witness = _scan_copies_state(tensor_copies(base, copies), copies,
                                         tol, rotation)
            if witness is not None:
                return witness
    return None


def tau22_criterion(state, max_copies=2, tol=NPT_TOL):
    """(fires, copies): does any N-copy state have a two-qubit block with
    positive concurrence?  Uses the exact two-qubit formula per block."""
    yy = np.kron(linalg.PAULI_Y, linalg.PAULI_Y)
    for copies in range(1, max_copies + 1):
        cs = tensor_copies(state, copies)
        dim_a, dim_b = cs.dims
        row_combos = np.asarray(list(itertools.combinations(range(dim_a), 2)))
        col_combos = np.asarray(list(itertools.combinations(range(dim_b), 2)))
        flat = (row_combos[:, None, :, None] * dim_b + col_combos[None, :, None, :])
        flat = flat.reshape(len(row_combos), len(col_combos), 4)
        chunk = max(1, _SCAN_CHUNK // max(1, len(col_combos)))
        for lo in range(0, len(row_combos), chunk):
            part = flat[lo:lo + chunk]
            blocks = cs.mat[part[..., :, None], part[..., None, :]]
            prod = blocks @ yy @ blocks.conj() @ yy
            ev = np.sort(np.real(np.linalg.eigvals(prod)), axis=-1)[..., ::-1]
            lam = np.sqrt(np.clip(ev, 0.0, None))
            w = lam[..., 0] - lam[..., 1] - lam[..., 2] - lam[..., 3]
            if w.max() > tol:
                return True, copies
    return False, None


def verdict(state, max_copies=2, rotations=0, seed=0):
    """Evaluate all three criteria and aggregate.

    Never claims non-distillability: the decision is "yes" or "unknown".
    """
    witness = npt_block_witness(state, max_copies=max_copies,
                                rotations=rotations, seed=seed)
    t22_fires, t22_copies = tau22_criterion(state, max_copies=max_copies)
    red_fires, red_min = reduction_violated(state)
    criteria = {
        "npt_block": witness is not None,
        "tau22": t22_fires,
        "reduction": red_fires,
    }
    decision = "yes" if any(criteria.values()) else "unknown"
    return DistillVerdict(decision, witness, criteria)
