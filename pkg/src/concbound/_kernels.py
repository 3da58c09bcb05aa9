"""Hot numeric kernels for the ensemble optimizer.

Two interchangeable implementations live here: numba ``@njit`` loops and a
vectorized pure-numpy fallback (suffix ``_numpy``).  The module-level names
``minors_sq_sum``, ``ensemble_value`` and ``run_sweep`` point at whichever
path is active; see ``_accel`` for the selection rules.

The objects being optimized are ensembles of sub-normalized vectors, stored
as the rows of a K x (m*n) complex matrix ``V`` with ``sum_i |v_i><v_i|``
fixed.  A sweep visits member pairs and applies the 2x2 unitary mixing that
minimizes the summed concurrence of the pair.  For a pair (a, b) every 2x2
minor of the mixed vector ``alpha*a + beta*b`` is the quadratic
``alpha^2*A + alpha*beta*B + beta^2*C`` in the mixing coefficients, so each
pair step only needs the coefficient triple per minor position.
"""
import numpy as np

from ._accel import njit, USING_NUMBA

_GOLDEN = 0.6180339887498949


# ---------------------------------------------------------------------------
# pure-numpy implementations
# ---------------------------------------------------------------------------

_PAIR_IDX = {}


def _pair_indices(m, n):
    # upper-triangular row/column pair indices, cached per shape
    key = (m, n)
    if key not in _PAIR_IDX:
        iu = np.triu_indices(m, 1)
        ju = np.triu_indices(n, 1)
        _PAIR_IDX[key] = (iu[0][:, None], iu[1][:, None], ju[0][None, :], ju[1][None, :])
    return _PAIR_IDX[key]


def _minor_table_numpy(a, b):
    m, n = a.shape
    i, k, j, l = _pair_indices(m, n)
    A = (a[i, j] * a[k, l] - a[i, l] * a[k, j]).ravel()
    B = (a[i, j] * b[k, l] + b[i, j] * a[k, l]
         - a[i, l] * b[k, j] - b[i, l] * a[k, j]).ravel()
    C = (b[i, j] * b[k, l] - b[i, l] * b[k, j]).ravel()
    return A, B, C


def minors_sq_sum_numpy(a):
    """Sum of squared magnitudes of all 2x2 minors of ``a``."""
    m, n = a.shape
    if m < 2 or n < 2:
        return 0.0
    i, k, j, l = _pair_indices(m, n)
    M = a[i, j] * a[k, l] - a[i, l] * a[k, j]
    return float((M.real ** 2 + M.imag ** 2).sum())


def ensemble_value_numpy(V, m, n):
    """Summed minor-form concurrence of all ensemble members (rows of V)."""
    tot = 0.0
    for i in range(V.shape[0]):
        tot += 2.0 * np.sqrt(minors_sq_sum_numpy(V[i].reshape(m, n)))
    return tot


def _pair_value_numpy(A, B, C, th, ph):
    e = np.exp(1j * ph)
    a1, b1 = np.cos(th), np.sin(th) * e
    a2, b2 = -np.sin(th) * np.conj(e), np.cos(th)
    m1 = a1 * a1 * A + a1 * b1 * B + b1 * b1 * C
    m2 = a2 * a2 * A + a2 * b2 * B + b2 * b2 * C
    s1 = float((m1.real ** 2 + m1.imag ** 2).sum())
    s2 = float((m2.real ** 2 + m2.imag ** 2).sum())
    return 2.0 * np.sqrt(s1) + 2.0 * np.sqrt(s2)


_ANGLE_TABLES = {}


def _angle_tables(n_theta, n_phi):
    key = (n_theta, n_phi)
    if key not in _ANGLE_TABLES:
        th = 0.5 * np.pi * np.arange(n_theta) / n_theta
        ph = 2.0 * np.pi * np.arange(n_phi) / n_phi
        TH, PH = np.meshgrid(th, ph, indexing="ij")
        TH, PH = TH.ravel(), PH.ravel()
        E = np.exp(1j * PH)
        a1, b1 = np.cos(TH), np.sin(TH) * E
        a2, b2 = -np.sin(TH) * np.conj(E), np.cos(TH)
        _ANGLE_TABLES[key] = (TH, PH, a1 * a1, a1 * b1, b1 * b1,
                              a2 * a2, a2 * b2, b2 * b2)
    return _ANGLE_TABLES[key]


def _golden_1d_numpy(A, B, C, th, ph, vary_theta, lo, hi, iters):
    a, b = lo, hi
    c = b - _GOLDEN * (b - a)
    d = a + _GOLDEN * (b - a)

    def f(x):
        return (_pair_value_numpy(A, B, C, x, ph) if vary_theta
                else _pair_value_numpy(A, B, C, th, x))

    fc, fd = f(c), f(d)
    for _ in range(iters):
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - _GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + _GOLDEN * (b - a)
            fd = f(d)
    return 0.5 * (a + b)


def _pair_min_grid_numpy(A, B, C, n_theta, n_phi, refine_rounds, refine_iters, U):
    TH, PH, c11, c12, c13, c21, c22, c23 = _angle_tables(n_theta, n_phi)
    m1 = c11[:, None] * A + c12[:, None] * B + c13[:, None] * C
    m2 = c21[:, None] * A + c22[:, None] * B + c23[:, None] * C
    vals = (2.0 * np.sqrt((m1.real ** 2 + m1.imag ** 2).sum(1))
            + 2.0 * np.sqrt((m2.real ** 2 + m2.imag ** 2).sum(1)))
    g = int(np.argmin(vals))
    th, ph = TH[g], PH[g]
    dth = 0.5 * np.pi / n_theta
    dph = 2.0 * np.pi / n_phi
    prev = float(vals[g])
    for _ in range(refine_rounds):
        th = _golden_1d_numpy(A, B, C, th, ph, True, th - dth, th + dth, refine_iters)
        ph = _golden_1d_numpy(A, B, C, th, ph, False, ph - dph, ph + dph, refine_iters)
        v = _pair_value_numpy(A, B, C, th, ph)
        if prev - v < 1e-15:
            prev = v
            break
        prev = v
        dth *= 0.35
        dph *= 0.35
    e = np.exp(1j * ph)
    U[0, 0] = np.cos(th)
    U[0, 1] = np.sin(th) * e
    U[1, 0] = -np.sin(th) * np.conj(e)
    U[1, 1] = np.cos(th)
    return prev


def _pair_min_takagi_numpy(A0, B0, C0, frac, U):
    # Exact two-member optimum for a single-minor (two-qubit) pair.  The
    # minors of the mixed members are the diagonal of W tau W^T with
    # tau = [[A, B/2], [B/2, C]]; min sum |diag| over unitaries equals the
    # gap of the Takagi singular values.  Returns -1.0 when close to
    # degenerate (caller falls back to the grid).
    t00, t01, t11 = A0, 0.5 * B0, C0
    g00 = (t00 * np.conj(t00) + t01 * np.conj(t01)).real
    g01 = t00 * np.conj(t01) + t01 * np.conj(t11)
    g11 = (t01 * np.conj(t01) + t11 * np.conj(t11)).real
    tr = g00 + g11
    if tr < 1e-300:
        U[:] = np.eye(2)
        return 0.0
    h = 0.5 * (g00 - g11)
    disc = np.sqrt(h * h + (g01 * np.conj(g01)).real)
    s1 = np.sqrt(0.5 * tr + disc)
    s2 = np.sqrt(max(0.5 * tr - disc, 0.0))
    if s1 - s2 < 1e-9 * (s1 + s2):
        return -1.0
    if (g01 * np.conj(g01)).real > 1e-30 * tr * tr:
        w = np.array([g01, 0.5 * tr + disc - g00], dtype=complex)
    else:
        w = np.array([1.0, 0.0] if g00 >= g11 else [0.0, 1.0], dtype=complex)
    w /= np.linalg.norm(w)
    tau = np.array([[t00, t01], [t01, t11]])
    u = tau @ np.conj(w)
    ip = np.vdot(w, u)  # s1 * e^{i delta}
    if abs(ip) < 1e-300:
        return -1.0
    q1 = np.sqrt(ip / abs(ip)) * w
    v = np.array([-np.conj(w[1]), np.conj(w[0])])
    u2 = tau @ np.conj(v)
    ip2 = np.vdot(v, u2)
    half2 = np.sqrt(ip2 / abs(ip2)) if abs(ip2) > 1e-14 * s1 else 1.0
    q2 = half2 * v
    # split fraction picks a point on the optimal family; every choice
    # attains the same pair value but steers the global iteration
    c2 = (s2 + frac * (s1 - s2)) / (s1 + s2)
    c = np.sqrt(c2)
    s = np.sqrt(1.0 - c2)
    R = np.array([[c, 1j * s], [1j * s, c]])
    Q = np.column_stack([q1, q2])
    U[:] = R @ Q.conj().T
    d1 = c * c * s1 - s * s * s2
    d2 = c * c * s2 - s * s * s1
    return 2.0 * (abs(d1) + abs(d2))


def run_sweep_numpy(V, m, n, order, frac, n_theta, n_phi, refine_rounds, refine_iters):
    """One pass over the given member pairs; returns total objective decrease."""
    U = np.empty((2, 2), dtype=complex)
    single_minor = (m == 2 and n == 2)
    total = 0.0
    for i, k in order:
        a = V[i].reshape(m, n)
        b = V[k].reshape(m, n)
        A, B, C = _minor_table_numpy(a, b)
        cur = (2.0 * np.sqrt((A.real ** 2 + A.imag ** 2).sum())
               + 2.0 * np.sqrt((C.real ** 2 + C.imag ** 2).sum()))
        if single_minor:
            v = _pair_min_takagi_numpy(A[0], B[0], C[0], frac, U)
            if v < 0.0:
                v = _pair_min_grid_numpy(A, B, C, n_theta, n_phi,
                                         refine_rounds, refine_iters, U)
        else:
            v = _pair_min_grid_numpy(A, B, C, n_theta, n_phi,
                                     refine_rounds, refine_iters, U)
        if v < cur - 1e-15:
            vi = U[0, 0] * V[i] + U[0, 1] * V[k]
            vk = U[1, 0] * V[i] + U[1, 1] * V[k]
            V[i] = vi
            V[k] = vk
            total += cur - v
    return total


# ---------------------------------------------------------------------------
# numba implementations
# ---------------------------------------------------------------------------

if USING_NUMBA:

    @njit(cache=True)
    def _minor_coeffs_nb(a, b, A, B, C):
        m, n = a.shape
        idx = 0
        for i in range(m - 1):
            for k in range(i + 1, m):
                for j in range(n - 1):
                    for l in range(j + 1, n):
                        A[idx] = a[i, j] * a[k, l] - a[i, l] * a[k, j]
                        B[idx] = (a[i, j] * b[k, l] + b[i, j] * a[k, l]
                                  - a[i, l] * b[k, j] - b[i, l] * a[k, j])
                        C[idx] = b[i, j] * b[k, l] - b[i, l] * b[k, j]
                        idx += 1

    @njit(cache=True)
    def _minors_sq_sum_nb(a):
        m, n = a.shape
        tot = 0.0
        for i in range(m - 1):
            for k in range(i + 1, m):
                for j in range(n - 1):
                    for l in range(j + 1, n):
                        mm = a[i, j] * a[k, l] - a[i, l] * a[k, j]
                        tot += mm.real * mm.real + mm.imag * mm.imag
        return tot

    @njit(cache=True)
    def _ensemble_value_nb(V, m, n):
        tot = 0.0
        for i in range(V.shape[0]):
            tot += 2.0 * np.sqrt(_minors_sq_sum_nb(V[i].reshape(m, n)))
        return tot

    @njit(cache=True)
    def _pair_value_nb(A, B, C, th, ph):
        e = complex(np.cos(ph), np.sin(ph))
        a1 = np.cos(th) + 0j
        b1 = np.sin(th) * e
        a2 = -np.sin(th) * np.conj(e)
        b2 = np.cos(th) + 0j
        s1 = 0.0
        s2 = 0.0
        for q in range(A.size):
            m1 = a1 * a1 * A[q] + a1 * b1 * B[q] + b1 * b1 * C[q]
            s1 += m1.real * m1.real + m1.imag * m1.imag
            m2 = a2 * a2 * A[q] + a2 * b2 * B[q] + b2 * b2 * C[q]
            s2 += m2.real * m2.real + m2.imag * m2.imag
        return 2.0 * np.sqrt(s1) + 2.0 * np.sqrt(s2)

    @njit(cache=True)
    def _golden_1d_nb(A, B, C, th, ph, vary_theta, lo, hi, iters):
        gr = _GOLDEN
        a, b = lo, hi
        c = b - gr * (b - a)
        d = a + gr * (b - a)
        if vary_theta:
            fc = _pair_value_nb(A, B, C, c, ph)
            fd = _pair_value_nb(A, B, C, d, ph)
        else:
            fc = _pair_value_nb(A, B, C, th, c)
            fd = _pair_value_nb(A, B, C, th, d)
        for _ in range(iters):
            if fc < fd:
                b, d, fd = d, c, fc
                c = b - gr * (b - a)
                fc = (_pair_value_nb(A, B, C, c, ph) if vary_theta
                      else _pair_value_nb(A, B, C, th, c))
            else:
                a, c, fc = c, d, fd
                d = a + gr * (b - a)
                fd = (_pair_value_nb(A, B, C, d, ph) if vary_theta
                      else _pair_value_nb(A, B, C, th, d))
        return 0.5 * (a + b)

    @njit(cache=True)
    def _pair_min_grid_nb(A, B, C, n_theta, n_phi, refine_rounds, refine_iters, U):
        best_v = 1e300
        best_th = 0.0
        best_ph = 0.0
        for it in range(n_theta):
            th = 0.5 * np.pi * it / n_theta
            for ip in range(n_phi):
                ph = 2.0 * np.pi * ip / n_phi
                v = _pair_value_nb(A, B, C, th, ph)
                if v < best_v:
                    best_v, best_th, best_ph = v, th, ph
        th, ph = best_th, best_ph
        dth = 0.5 * np.pi / n_theta
        dph = 2.0 * np.pi / n_phi
        prev = best_v
        for _ in range(refine_rounds):
            th = _golden_1d_nb(A, B, C, th, ph, True, th - dth, th + dth, refine_iters)
            ph = _golden_1d_nb(A, B, C, th, ph, False, ph - dph, ph + dph, refine_iters)
            v = _pair_value_nb(A, B, C, th, ph)
            if prev - v < 1e-15:
                prev = v
                break
            prev = v
            dth *= 0.35
            dph *= 0.35
        e = complex(np.cos(ph), np.sin(ph))
        U[0, 0] = np.cos(th) + 0j
        U[0, 1] = np.sin(th) * e
        U[1, 0] = -np.sin(th) * np.conj(e)
        U[1, 1] = np.cos(th) + 0j
        return prev

    @njit(cache=True)
    def _pair_min_takagi_nb(A0, B0, C0, frac, U):
        t00 = A0
        t01 = 0.5 * B0
        t11 = C0
        g00 = (t00 * np.conj(t00) + t01 * np.conj(t01)).real
        g01 = t00 * np.conj(t01) + t01 * np.conj(t11)
        g11 = (t01 * np.conj(t01) + t11 * np.conj(t11)).real
        tr = g00 + g11
        if tr < 1e-300:
            U[0, 0] = 1.0 + 0j
            U[0, 1] = 0.0 + 0j
            U[1, 0] = 0.0 + 0j
            U[1, 1] = 1.0 + 0j
            return 0.0
        h = 0.5 * (g00 - g11)
        disc = np.sqrt(h * h + (g01 * np.conj(g01)).real)
        mu2 = 0.5 * tr - disc
        if mu2 < 0.0:
            mu2 = 0.0
        s1 = np.sqrt(0.5 * tr + disc)
        s2 = np.sqrt(mu2)
        if s1 - s2 < 1e-9 * (s1 + s2):
            return -1.0
        if (g01 * np.conj(g01)).real > 1e-30 * tr * tr:
            w0 = g01
            w1 = complex(0.5 * tr + disc - g00, 0.0)
        elif g00 >= g11:
            w0 = 1.0 + 0j
            w1 = 0.0 + 0j
        else:
            w0 = 0.0 + 0j
            w1 = 1.0 + 0j
        nw = np.sqrt((w0 * np.conj(w0) + w1 * np.conj(w1)).real)
        w0 /= nw
        w1 /= nw
        u0 = t00 * np.conj(w0) + t01 * np.conj(w1)
        u1 = t01 * np.conj(w0) + t11 * np.conj(w1)
        ip = np.conj(w0) * u0 + np.conj(w1) * u1
        aip = abs(ip)
        if aip < 1e-300:
            return -1.0
        half = np.sqrt(ip / aip)
        q10 = half * w0
        q11 = half * w1
        v0 = -np.conj(w1)
        v1 = np.conj(w0)
        u0b = t00 * np.conj(v0) + t01 * np.conj(v1)
        u1b = t01 * np.conj(v0) + t11 * np.conj(v1)
        ip2 = np.conj(v0) * u0b + np.conj(v1) * u1b
        aip2 = abs(ip2)
        if aip2 < 1e-14 * s1:
            half2 = 1.0 + 0j
        else:
            half2 = np.sqrt(ip2 / aip2)
        q20 = half2 * v0
        q21 = half2 * v1
        c2 = (s2 + frac * (s1 - s2)) / (s1 + s2)
        c = np.sqrt(c2)
        s = np.sqrt(1.0 - c2)
        i_s = complex(0.0, s)
        U[0, 0] = c * np.conj(q10) + i_s * np.conj(q20)
        U[0, 1] = c * np.conj(q11) + i_s * np.conj(q21)
        U[1, 0] = i_s * np.conj(q10) + c * np.conj(q20)
        U[1, 1] = i_s * np.conj(q11) + c * np.conj(q21)
        d1 = c * c * s1 - s * s * s2
        d2 = c * c * s2 - s * s * s1
        return 2.0 * (abs(d1) + abs(d2))

    @njit(cache=True)
    def run_sweep_nb(V, m, n, order, frac, n_theta, n_phi, refine_rounds, refine_iters):
        M = ((m * (m - 1)) // 2) * ((n * (n - 1)) // 2)
        A = np.empty(M, dtype=np.complex128)
        B = np.empty(M, dtype=np.complex128)
        C = np.empty(M, dtype=np.complex128)
        U = np.empty((2, 2), dtype=np.complex128)
        total = 0.0
        for oi in range(order.shape[0]):
            i = order[oi, 0]
            k = order[oi, 1]
            a = V[i].reshape(m, n)
            b = V[k].reshape(m, n)
            _minor_coeffs_nb(a, b, A, B, C)
            sa = 0.0
            sc = 0.0
            for q in range(M):
                sa += A[q].real * A[q].real + A[q].imag * A[q].imag
                sc += C[q].real * C[q].real + C[q].imag * C[q].imag
            cur = 2.0 * np.sqrt(sa) + 2.0 * np.sqrt(sc)
            if M == 1:
                v = _pair_min_takagi_nb(A[0], B[0], C[0], frac, U)
                if v < 0.0:
                    v = _pair_min_grid_nb(A, B, C, n_theta, n_phi,
                                          refine_rounds, refine_iters, U)
            else:
                v = _pair_min_grid_nb(A, B, C, n_theta, n_phi,
                                      refine_rounds, refine_iters, U)
            if v < cur - 1e-15:
                for q in range(V.shape[1]):
                    vi = U[0, 0] * V[i, q] + U[0, 1] * V[k, q]
                    vk = U[1, 0] * V[i, q] + U[1, 1] * V[k, q]
                    V[i, q] = vi
                    V[k, q] = vk
                total += cur - v
        return total

    def minors_sq_sum(a):
        """Sum of squared magnitudes of all 2x2 minors of ``a``."""
        m, n = a.shape
        if m < 2 or n < 2:
            return 0.0
        return float(_minors_sq_sum_nb(np.ascontiguousarray(a, dtype=np.complex128)))

    def ensemble_value(V, m, n):
        return float(_ensemble_value_nb(V, m, n))

    def run_sweep(V, m, n, order, frac, n_theta, n_phi, refine_rounds, refine_iters):
        return float(run_sweep_nb(V, m, n, order, frac, n_theta, n_phi,
                                  refine_rounds, refine_iters))

else:
    minors_sq_sum = minors_sq_sum_numpy
    ensemble_value = ensemble_value_numpy
    run_sweep = run_sweep_numpy
