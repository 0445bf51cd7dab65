# cython: boundscheck=False, wraparound=False, cdivision=True
"""Native compute kernels.

Mirrors puccikit._kernels_py expression for expression (operation order,
branch structure, reduction order), so results are bitwise identical to the
pure lane. Keep the lanes in sync when editing.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fabs, fmax, fmin, sqrt

cnp.import_array()

JACOBI_EPS = 1e-14
JACOBI_MAX_SWEEPS = 60


def jacobi_eigh_batch(mats):
    """Cyclic-Jacobi eigendecomposition of a stack of symmetric matrices."""
    A = np.array(mats, dtype=np.float64, order="C")
    single = A.ndim == 2
    if single:
        A = A[None]
    if A.ndim != 3 or A.shape[1] != A.shape[2]:
        raise ValueError("expected a square matrix or a stack of them")
    cdef Py_ssize_t B = A.shape[0]
    cdef Py_ssize_t n = A.shape[1]
    Q = np.broadcast_to(np.eye(n), (B, n, n)).copy()
    evals = np.empty((B, n), dtype=np.float64)
    evecs = np.empty((B, n, n), dtype=np.float64)
    if n == 1 or B == 0:
        if n == 1:
            evals[:, 0] = A[:, 0, 0]
            evecs[:] = 1.0
        if single:
            return evals[0], evecs[0]
        return evals, evecs

    cdef double[:, :, ::1] Av = A
    cdef double[:, :, ::1] Qv = Q
    cdef double[:, ::1] ev = evals
    cdef double[:, :, ::1] evec = evecs
    cdef double eps = JACOBI_EPS
    cdef int max_sweeps = JACOBI_MAX_SWEEPS
    cdef Py_ssize_t m, i, j, p, q, k, sweep
    cdef double thresh, off, maxabs, apq, app, aqq, theta, sgn, t, c, s
    cdef double xkp, xkq
    cdef int converged
    perm_arr = np.empty(n, dtype=np.intp)
    cdef Py_ssize_t[::1] perm = perm_arr
    cdef Py_ssize_t key_idx, jj

    for m in range(B):
        maxabs = 0.0
        for i in range(n):
            for j in range(n):
                if fabs(Av[m, i, j]) > maxabs:
                    maxabs = fabs(Av[m, i, j])
        thresh = eps * fmax(1.0, maxabs)
        converged = 0
        for sweep in range(max_sweeps):
            off = 0.0
            for i in range(n - 1):
                for j in range(i + 1, n):
                    if fabs(Av[m, i, j]) > off:
                        off = fabs(Av[m, i, j])
            if off <= thresh:
                converged = 1
                break
            for p in range(n - 1):
                for q in range(p + 1, n):
                    apq = Av[m, p, q]
                    if apq == 0.0:
                        continue
                    app = Av[m, p, p]
                    aqq = Av[m, q, q]
                    theta = (aqq - app) / (2.0 * apq)
                    sgn = 1.0 if theta >= 0.0 else -1.0
                    t = sgn / (fabs(theta) + sqrt(theta * theta + 1.0))
                    c = 1.0 / sqrt(t * t + 1.0)
                    s = t * c
                    for k in range(n):
                        xkp = Av[m, k, p]
                        xkq = Av[m, k, q]
                        Av[m, k, p] = c * xkp - s * xkq
                        Av[m, k, q] = s * xkp + c * xkq
                    for k in range(n):
                        xkp = Av[m, p, k]
                        xkq = Av[m, q, k]
                        Av[m, p, k] = c * xkp - s * xkq
                        Av[m, q, k] = s * xkp + c * xkq
                    for k in range(n):
                        xkp = Qv[m, k, p]
                        xkq = Qv[m, k, q]
                        Qv[m, k, p] = c * xkp - s * xkq
                        Qv[m, k, q] = s * xkp + c * xkq
        if not converged:
            raise RuntimeError("jacobi iteration failed to converge")

        # stable ascending insertion sort of the diagonal
        for i in range(n):
            perm[i] = i
        for i in range(1, n):
            key_idx = perm[i]
            jj = i - 1
            while jj >= 0 and Av[m, perm[jj], perm[jj]] > Av[m, key_idx, key_idx]:
                perm[jj + 1] = perm[jj]
                jj -= 1
            perm[jj + 1] = key_idx
        for i in range(n):
            ev[m, i] = Av[m, perm[i], perm[i]]
            for k in range(n):
                evec[m, k, i] = Qv[m, k, perm[i]]

    if single:
        return evals[0], evecs[0]
    return evals, evecs


def fd_sweep(u, f_int, tab, double lam, double Lam, double b, double c,
             double tau):
    """One damped Jacobi sweep; see the pure lane for the contract."""
    cdef double[::1] uv = u
    cdef double[::1] fv = f_int
    cdef Py_ssize_t[::1] center = tab["center"]
    cdef Py_ssize_t[:, ::1] nbp = tab["nb_plus"]
    cdef Py_ssize_t[:, ::1] nbm = tab["nb_minus"]
    cdef double[::1] inv2 = tab["inv_len2"]
    cdef double[::1] inv1 = tab["inv_len"]
    pairs_obj = tab["pairs"]
    cdef Py_ssize_t[:, ::1] pairs
    cdef bint have_pairs = pairs_obj is not None
    if have_pairs:
        pairs = pairs_obj
    cdef Py_ssize_t ni = center.shape[0]
    cdef Py_ssize_t na = nbp.shape[0]
    cdef Py_ssize_t np_ = pairs.shape[0] if have_pairs else 0

    u_new = np.array(u, dtype=np.float64, copy=True)
    s_out = np.empty(ni, dtype=np.float64)
    cdef double[::1] unv = u_new
    cdef double[::1] sv = s_out
    phi_arr = np.empty(na, dtype=np.float64)
    cdef double[::1] phi = phi_arr

    cdef Py_ssize_t i, a, t0, t1
    cdef double uc, up, um, d, s2, gp, gm, grun, grad, s_val, r
    cdef double residual = 0.0

    for i in range(ni):
        uc = uv[center[i]]
        for a in range(na):
            up = uv[nbp[a, i]]
            um = uv[nbm[a, i]]
            d = ((up - 2.0 * uc) + um) * inv2[a]
            phi[a] = Lam * fmax(d, 0.0) + lam * fmin(d, 0.0)
        if not have_pairs:
            s2 = phi[0]
            for a in range(1, na):
                s2 = fmax(s2, phi[a])
        else:
            t0 = pairs[0, 0]
            t1 = pairs[0, 1]
            s2 = phi[t0] + phi[t1]
            for a in range(1, np_):
                t0 = pairs[a, 0]
                t1 = pairs[a, 1]
                s2 = fmax(s2, phi[t0] + phi[t1])
        if b != 0.0:
            grun = -1.0
            for a in range(na):
                up = uv[nbp[a, i]]
                um = uv[nbm[a, i]]
                gp = (up - uc) * inv1[a]
                gm = (uc - um) * inv1[a]
                if a == 0:
                    grun = fmax(gp, -gm)
                else:
                    grun = fmax(grun, fmax(gp, -gm))
            grad = fmax(grun, 0.0)
            if c != 0.0:
                s_val = (s2 + b * grad) - c * uc
            else:
                s_val = s2 + b * grad
        else:
            if c != 0.0:
                s_val = s2 - c * uc
            else:
                s_val = s2
        r = s_val - fv[i]
        sv[i] = s_val
        unv[center[i]] = uc + tau * r
        if fabs(r) > residual:
            residual = fabs(r)

    return u_new, residual, s_out
