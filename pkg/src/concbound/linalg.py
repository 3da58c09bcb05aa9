"""Dense complex linear algebra and bipartite matrix transforms.

All bipartite operations use the index convention that the composite basis
vector |i>|j> of an m x n system sits at row i*n + j ("row-major-A-major").
Every function is pure; inputs are never mutated.
"""
import numpy as np

from .errors import DimensionError, NumericalError, SizeLimitError, ValidationError

DIM_CAP = 4096

PAULI_X = np.array([[0, 1], [1, 0]], dtype=complex)
PAULI_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
PAULI_Z = np.array([[1, 0], [0, -1]], dtype=complex)


def as_complex_matrix(a):
    """Coerce to a 2-D complex128 array, rejecting non-finite entries."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise DimensionError(f"expected a matrix, got ndim={a.ndim}")
    if not np.all(np.isfinite(a.real)) or not np.all(np.isfinite(a.imag)):
        raise ValidationError("matrix contains non-finite entries")
    return a


def _check_bipartite(rho, m, n):
    if m < 2 or n < 2:
        raise DimensionError(f"local dimensions must be >= 2, got {m}x{n}")
    if rho.shape != (m * n, m * n):
        raise DimensionError(
            f"matrix shape {rho.shape} does not match bipartite dims {m}x{n}")


def hermiticity_defect(a):
    """Max entrywise |a - a^dag|."""
    return float(np.abs(a - a.conj().T).max()) if a.size else 0.0


def hermitian_tol(a):
    """Default hermiticity tolerance, scaled to the matrix magnitude."""
    scale = float(np.abs(a).max()) if a.size else 0.0
    return 1e-8 * (1.0 + scale)


def hermitize(a, tol=None):
    """Symmetrize (a + a^dag)/2; reject inputs beyond the hermiticity tolerance."""
    a = as_complex_matrix(a)
    if a.shape[0] != a.shape[1]:
        raise DimensionError(f"expected a square matrix, got {a.shape}")
    if tol is None:
        tol = hermitian_tol(a)
    defect = hermiticity_defect(a)
    if defect > tol:
        raise ValidationError(
            f"matrix is not Hermitian: max |a - a^dag| = {defect:.3e} > tol {tol:.3e}")
    return 0.5 * (a + a.conj().T)


def kron(a, b, dim_cap=DIM_CAP):
    """Tensor (Kronecker) product with a result-dimension cap."""
    a = as_complex_matrix(a)
    b = as_complex_matrix(b)
    rows = a.shape[0] * b.shape[0]
    cols = a.shape[1] * b.shape[1]
    if max(rows, cols) > dim_cap:
        raise SizeLimitError(
            f"kron result would be {rows}x{cols}, exceeding the cap {dim_cap}")
    return np.kron(a, b)


def partial_trace(rho, dims, side="B"):
    """Trace out one subsystem; side="B" returns the m x m A-marginal."""
    rho = as_complex_matrix(rho)
    m, n = dims
    _check_bipartite(rho, m, n)
    r = rho.reshape(m, n, m, n)
    if side == "B":
        return np.einsum("ijkj->ik", r)
    if side == "A":
        return np.einsum("ijil->jl", r)
    raise ValueError(f"side must be 'A' or 'B', got {side!r}")


def partial_transpose(rho, dims, side="A"):
    """Transpose one subsystem's indices; output[(i,j),(k,l)] = rho[(k,j),(i,l)] for side A."""
    rho = as_complex_matrix(rho)
    m, n = dims
    _check_bipartite(rho, m, n)
    r = rho.reshape(m, n, m, n)
    if side == "A":
        return r.transpose(2, 1, 0, 3).reshape(m * n, m * n)
    if side == "B":
        return r.transpose(0, 3, 2, 1).reshape(m * n, m * n)
    raise ValueError(f"side must be 'A' or 'B', got {side!r}")


def realign(rho, dims):
    """Reshuffle to the m^2 x n^2 matrix R with R[(i,k),(j,l)] = rho[(i,j),(k,l)]."""
    rho = as_complex_matrix(rho)
    m, n = dims
    _check_bipartite(rho, m, n)
    return rho.reshape(m, n, m, n).transpose(0, 2, 1, 3).reshape(m * m, n * n)


def realign_inverse(r, dims):
    """Invert :func:`realign`: recover rho from its reshuffled form."""
    r = as_complex_matrix(r)
    m, n = dims
    if r.shape != (m * m, n * n):
        raise DimensionError(
            f"realigned shape {r.shape} does not match dims {m}x{n}")
    return r.reshape(m, m, n, n).transpose(0, 2, 1, 3).reshape(m * n, m * n)


def swap_sides(rho, dims):
    """Exchange the two subsystems: output[(j,i),(l,k)] = rho[(i,j),(k,l)]."""
    rho = as_complex_matrix(rho)
    m, n = dims
    _check_bipartite(rho, m, n)
    return rho.reshape(m, n, m, n).transpose(1, 0, 3, 2).reshape(m * n, m * n)


def trace_norm(a):
    """Sum of singular values (full SVD; the input need not be square)."""
    a = as_complex_matrix(a)
    try:
        return float(np.linalg.svd(a, compute_uv=False).sum())
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"SVD failed: {exc}") from exc


def eig_hermitian(a, tol=None):
    """Real eigenvalues (ascending) of a Hermitian matrix, symmetrized first."""
    h = hermitize(a, tol=tol)
    try:
        return np.linalg.eigvalsh(h)
    except np.linalg.LinAlgError as exc:
        raise NumericalError(f"eigensolver failed: {exc}") from exc


def min_eigenvalue(a, tol=None):
    """Smallest eigenvalue of a Hermitian matrix."""
    return float(eig_hermitian(a, tol=tol)[0])


def hermitian_trace_norm(a):
    """Trace norm via eigenvalues, valid for Hermitian input only."""
    return float(np.abs(eig_hermitian(a)).sum())
