"""Bipartite states: construction, validation, builtin examples, N-copy
regrouping, and file round-tripping.

The file format is JSON with fields ``m``, ``n``, ``re``, ``im`` (row-major
mn x mn real arrays) and ``convention`` fixed to ``row-major-A-major``.
Floats are written at full round-trip precision, so load(save(x)) is
bit-exact.
"""
import itertools
import json
from dataclasses import dataclass, field

import numpy as np

from . import linalg
from .errors import DimensionError, SizeLimitError, ValidationError

FILE_CONVENTION = "row-major-A-major"

#: default builtin parameters
DEFAULT_PARAMS = {"p": 0.5, "alpha": 3.5, "w": 0.9, "d": 3}

BUILTIN_NAMES = ("rho0", "sigma_alpha", "rho1", "rho2", "maxent", "isotropic")


@dataclass(frozen=True)
class PureState:
    """Pure bipartite state given by its m x n coefficient matrix."""

    coeffs: np.ndarray

    def __post_init__(self):
        c = linalg.as_complex_matrix(self.coeffs)
        if c.shape[0] < 2 or c.shape[1] < 2:
            raise DimensionError(f"pure state needs local dims >= 2, got {c.shape}")
        c = c.copy()
        c.flags.writeable = False
        object.__setattr__(self, "coeffs", c)

    @property
    def m(self):
        return self.coeffs.shape[0]

    @property
    def n(self):
        return self.coeffs.shape[1]

    @property
    def norm(self):
        return float(np.linalg.norm(self.coeffs))

    def vector(self):
        """Coefficient matrix flattened to the composite i*n+j ordering."""
        return self.coeffs.reshape(-1)

    def require_normalized(self, tol=1e-10):
        if abs(self.norm - 1.0) > tol:
            raise ValidationError(
                f"pure state is not normalized: |norm - 1| = {abs(self.norm - 1.0):.3e}")
        return self


@dataclass(frozen=True)
class BipartiteState:
    """Density matrix with bipartite dimension metadata (m, n).

    ``normalized`` marks unit-trace states; projected sub-blocks carry
    ``normalized=False`` and a trace <= 1.
    """

    mat: np.ndarray
    m: int
    n: int
    normalized: bool = field(default=True)

    def __post_init__(self):
        mat = linalg.as_complex_matrix(self.mat)
        linalg._check_bipartite(mat, self.m, self.n)
        mat = mat.copy()
        mat.flags.writeable = False
        object.__setattr__(self, "mat", mat)

    @property
    def dims(self):
        return (self.m, self.n)

    @property
    def dim(self):
        return self.m * self.n

    def trace(self):
        return float(np.trace(self.mat).real)

    def min_eigenvalue(self):
        return linalg.min_eigenvalue(self.mat)

    def validate(self, trace_tol=1e-8, psd_tol=1e-8, herm_tol=None):
        """Check hermiticity, trace (for normalized states) and positivity.

        Raises ValidationError naming the violated invariant together with
        the measured defect.
        """
        defect = linalg.hermiticity_defect(self.mat)
        htol = linalg.hermitian_tol(self.mat) if herm_tol is None else herm_tol
        if defect > htol:
            raise ValidationError(
                f"hermiticity violated: max |rho - rho^dag| = {defect:.3e} > {htol:.3e}")
        tr = self.trace()
        if self.normalized and abs(tr - 1.0) > trace_tol:
            raise ValidationError(
                f"trace violated: |tr - 1| = {abs(tr - 1.0):.3e} > {trace_tol:.3e}")
        if not self.normalized and tr > 1.0 + trace_tol:
            raise ValidationError(
                f"unnormalized block has trace {tr:.6f} > 1")
        mineig = self.min_eigenvalue()
        if mineig < -psd_tol:
            raise ValidationError(
                f"positivity violated: min eigenvalue = {mineig:.3e} < -{psd_tol:.3e}")
        return self

    def swap(self):
        """Exchange the A and B subsystems."""
        return BipartiteState(linalg.swap_sides(self.mat, self.dims),
                              self.n, self.m, self.normalized)


def from_pure(psi):
    """Rank-one projector |psi><psi| of a normalized pure state."""
    psi.require_normalized()
    v = psi.vector()
    return BipartiteState(np.outer(v, v.conj()), psi.m, psi.n)


def basis_ket(i, j, m, n):
    """Coefficient matrix of the product basis vector |i>|j>."""
    c = np.zeros((m, n), dtype=complex)
    c[i, j] = 1.0
    return PureState(c)


def max_entangled(d):
    """|phi+_d> = sum_i |ii> / sqrt(d) in d x d."""
    c = np.eye(d, dtype=complex) / np.sqrt(d)
    return PureState(c)


def _require_range(params, key, lo, hi):
    v = float(params[key])
    if not (lo <= v <= hi):
        raise ValidationError(f"parameter {key}={v} out of range [{lo}, {hi}]")
    return v


def _sigma_alpha_matrix(alpha):
    psi = max_entangled(3)
    m = (2.0 / 7.0) * from_pure(psi).mat
    plus = [(0, 1), (1, 2), (2, 0)]
    minus = [(1, 0), (2, 1), (0, 2)]
    for (i, j) in plus:
        m[i * 3 + j, i * 3 + j] += alpha / 21.0
    for (i, j) in minus:
        m[i * 3 + j, i * 3 + j] += (5.0 - alpha) / 21.0
    return m


def _embed_3x3_in_4x4(mat3, weight):
    out = np.zeros((16, 16), dtype=complex)
    for i, j, k, l in itertools.product(range(3), repeat=4):
        out[i * 4 + j, k * 4 + l] = weight * mat3[i * 3 + j, k * 3 + l]
    return out


def _rho2_matrix(p):
    # Taken verbatim from its published definition.  Note: this matrix is
    # *not* positive semidefinite for p > 0 (min eigenvalue (1-sqrt(2))p/6,
    # on the span of |00>, |01>, |12>); it is kept as printed because the
    # quoted kappa value is reproduced only in this form.
    r = np.zeros((16, 16), dtype=complex)
    for (i, j) in [(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2)]:
        r[i * 4 + j, i * 4 + j] = p / 6.0
    couplings = [((0, 0), (1, 2)), ((0, 1), (1, 2)), ((1, 0), (1, 1))]
    for (a, b), (c, d) in couplings:
        r[a * 4 + b, c * 4 + d] = -p / 6.0
        r[c * 4 + d, a * 4 + b] = -p / 6.0
    r[2 * 4 + 2, 2 * 4 + 2] = (1.0 - p) / 2.0
    r[3 * 4 + 3, 3 * 4 + 3] = (1.0 - p) / 2.0
    return r


def builtin(name, **params):
    """Construct one of the builtin example states.

    Known names and their parameters:

    * ``rho0``     (p):        rank-2 mix of a 3-level maximally entangled
                               state and |33><33|, in 4x4.
    * ``sigma_alpha`` (alpha): the 3x3 one-parameter family that is separable
                               for alpha in [2,3], PPT entangled in (3,4],
                               and NPT for (4,5].
    * ``rho1``     (p, alpha): p * sigma_alpha embedded in 4x4 plus
                               (1-p)|33><33|.
    * ``rho2``     (p):        the 4x4 NPT example state (see the note in
                               the source: not PSD as defined).
    * ``maxent``   (d):        |phi+_d><phi+_d| in d x d.
    * ``isotropic`` (d, w):    w|phi+_d><phi+_d| + (1-w) I / d^2.
    """
    full = dict(DEFAULT_PARAMS)
    unknown = set(params) - set(full)
    if unknown:
        raise ValidationError(f"unknown parameters {sorted(unknown)}")
    full.update(params)
    if name == "rho0":
        p = _require_range(full, "p", 0.0, 1.0)
        psi = max_entangled(3)
        m = np.zeros((16, 16), dtype=complex)
        m += _embed_3x3_in_4x4(from_pure(psi).mat, p)
        m[15, 15] += 1.0 - p
        return BipartiteState(m, 4, 4)
    if name == "sigma_alpha":
        alpha = _require_range(full, "alpha", 2.0, 5.0)
        return BipartiteState(_sigma_alpha_matrix(alpha), 3, 3)
    if name == "rho1":
        p = _require_range(full, "p", 0.0, 1.0)
        alpha = _require_range(full, "alpha", 2.0, 5.0)
        m = _embed_3x3_in_4x4(_sigma_alpha_matrix(alpha), p)
        m[15, 15] += 1.0 - p
        return BipartiteState(m, 4, 4)
    if name == "rho2":
        p = _require_range(full, "p", 0.0, 1.0)
        return BipartiteState(_rho2_matrix(p), 4, 4)
    if name == "maxent":
        d = int(_require_range(full, "d", 2, 16))
        return from_pure(max_entangled(d))
    if name == "isotropic":
        d = int(_require_range(full, "d", 2, 16))
        w = _require_range(full, "w", 0.0, 1.0)
        m = w * from_pure(max_entangled(d)).mat + (1.0 - w) * np.eye(d * d) / (d * d)
        return BipartiteState(m, d, d)
    raise ValidationError(f"unknown builtin state {name!r}; choose from {BUILTIN_NAMES}")


def tensor_copies(state, copies, dim_cap=linalg.DIM_CAP):
    """N-fold tensor power, regrouped to a bipartite m^N x n^N state.

    The output entry at ((i_vec, j_vec), (k_vec, l_vec)) is the product over
    copies a of rho[(i_a, j_a), (k_a, l_a)]; multi-indices are ordered
    lexicographically with the first copy slowest.
    """
    if copies < 1:
        raise ValidationError(f"copies must be >= 1, got {copies}")
    m, n = state.dims
    if (m * n) ** copies > dim_cap:
        raise SizeLimitError(
            f"{copies}-copy state would have dimension {(m * n) ** copies} > {dim_cap}")
    if copies == 1:
        return state
    out = state.mat
    for _ in range(copies - 1):
        out = np.kron(out, state.mat)
    # legs come out as (i1 j1 i2 j2 ...); regroup to (i1 i2 ... | j1 j2 ...)
    legs = [m, n] * copies
    perm = list(range(0, 2 * copies, 2)) + list(range(1, 2 * copies, 2))
    full = out.reshape(legs + legs)
    full = full.transpose(perm + [p + 2 * copies for p in perm])
    d_a, d_b = m ** copies, n ** copies
    return BipartiteState(full.reshape(d_a * d_b, d_a * d_b), d_a, d_b,
                          state.normalized)


def save(state, path):
    """Write a state to a JSON file at full precision."""
    doc = {
        "convention": FILE_CONVENTION,
        "m": state.m,
        "n": state.n,
        "re": state.mat.real.tolist(),
        "im": state.mat.imag.tolist(),
    }
    with open(path, "w") as fh:
        json.dump(doc, fh)


def load(path, trace_tol=1e-8, psd_tol=1e-8, validate=True):
    """Read a state file, validating shape and physical invariants.

    ``psd_tol``/``trace_tol`` control the physical validation; pass
    ``validate=False`` to accept any Hermitian matrix (used for fixtures
    that are deliberately outside the PSD cone).
    """
    with open(path) as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"malformed state file: {exc}") from exc
    for key in ("m", "n", "re", "im"):
        if key not in doc:
            raise ValidationError(f"state file missing field {key!r}")
    if doc.get("convention", FILE_CONVENTION) != FILE_CONVENTION:
        raise ValidationError(
            f"unsupported index convention {doc.get('convention')!r}")
    m, n = int(doc["m"]), int(doc["n"])
    re = np.asarray(doc["re"], dtype=float)
    im = np.asarray(doc["im"], dtype=float)
    if re.shape != (m * n, m * n) or im.shape != (m * n, m * n):
        raise DimensionError(
            f"file arrays have shape {re.shape}, expected {(m * n, m * n)} from m={m}, n={n}")
    state = BipartiteState(re + 1j * im, m, n)
    if validate:
        state.validate(trace_tol=trace_tol, psd_tol=psd_tol)
    return state


def fingerprint(state):
    """Cheap summary used by reports: dims, trace, min eigenvalue."""
    return {
        "m": state.m,
        "n": state.n,
        "trace": state.trace(),
        "min_eigenvalue": state.min_eigenvalue(),
    }
