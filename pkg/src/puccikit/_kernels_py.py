"""Pure-numpy compute kernels.

`puccikit._native` implements the same two entry points with identical
arithmetic (same expression shapes, same branch structure, same reduction
order), so the backends are interchangeable bit for bit. Keep the lanes in
sync when editing.
"""

import numpy as np

# Convergence threshold factor and sweep cap for the cyclic Jacobi iteration.
# Matrices in this toolkit are small (n <= 16); a dozen sweeps is typical.
JACOBI_EPS = 1e-14
JACOBI_MAX_SWEEPS = 60


def jacobi_eigh_batch(mats):
    """Eigendecomposition of a stack of symmetric matrices.

    Cyclic Jacobi rotations in a fixed row-major pair order; deterministic
    for a fixed input. Returns (eigenvalues, eigenvectors) with eigenvalues
    ascending and eigenvector column i paired with eigenvalue i.

    Parameters
    ----------
    mats : (B, n, n) or (n, n) float array, symmetric.
    """
    A = np.array(mats, dtype=np.float64, order="C")
    single = A.ndim == 2
    if single:
        A = A[None]
    if A.ndim != 3 or A.shape[1] != A.shape[2]:
        raise ValueError("expected a square matrix or a stack of them")
    B, n, _ = A.shape
    Q = np.broadcast_to(np.eye(n), (B, n, n)).copy()
    if n == 1 or B == 0:
        evals = np.empty((B, n))
        if n == 1:
            evals[:, 0] = A[:, 0, 0]
        if single:
            return evals[0], Q[0]
        return evals, Q

    iu = np.triu_indices(n, k=1)
    thresh = JACOBI_EPS * np.maximum(1.0, np.max(np.abs(A), axis=(1, 2)))

    for _ in range(JACOBI_MAX_SWEEPS):
        off = np.max(np.abs(A[:, iu[0], iu[1]]), axis=1)
        active = off > thresh
        if not active.any():
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = A[:, p, q]
                rot = active & (apq != 0.0)
                idx = np.flatnonzero(rot)
                if idx.size == 0:
                    continue
                a_pq = apq[idx]
                a_pp = A[idx, p, p]
                a_qq = A[idx, q, q]
                theta = (a_qq - a_pp) / (2.0 * a_pq)
                sgn = np.where(theta >= 0.0, 1.0, -1.0)
                t = sgn / (np.abs(theta) + np.sqrt(theta * theta + 1.0))
                c = 1.0 / np.sqrt(t * t + 1.0)
                s = t * c
                cc = c[:, None]
                ss = s[:, None]
                colp = A[idx, :, p].copy()
                colq = A[idx, :, q].copy()
                A[idx, :, p] = cc * colp - ss * colq
                A[idx, :, q] = ss * colp + cc * colq
                rowp = A[idx, p, :].copy()
                rowq = A[idx, q, :].copy()
                A[idx, p, :] = cc * rowp - ss * rowq
                A[idx, q, :] = ss * rowp + cc * rowq
                qp = Q[idx, :, p].copy()
                qq = Q[idx, :, q].copy()
                Q[idx, :, p] = cc * qp - ss * qq
                Q[idx, :, q] = ss * qp + cc * qq
    else:  # pragma: no cover - n <= 16 converges in far fewer sweeps
        raise RuntimeError("jacobi iteration failed to converge")

    evals = np.einsum("bii->bi", A).copy()
    order = np.argsort(evals, axis=1, kind="stable")
    evals = np.take_along_axis(evals, order, axis=1)
    Q = np.take_along_axis(Q, order[:, None, :], axis=2)
    if single:
        return evals[0], Q[0]
    return evals, Q


def fd_sweep(u, f_int, tab, lam, Lam, b, c, tau):
    """One damped Jacobi sweep of the discrete extremal operator.

    S_h[u] = discrete P^+ (order p over the stencil) + b*|Du|_h - c*u,
    updated as u <- u + tau*(S_h[u] - f) at interior nodes only.

    Parameters
    ----------
    u : flat node-value array (all grid nodes).
    f_int : right-hand side at interior nodes.
    tab : dict with precomputed index tables (see fd.grid.build_tables):
        center (Ni,), nb_plus/nb_minus (Na, Ni), inv_len2/inv_len (Na,),
        pairs (Np, 2) int or None for p=1.
    Returns (u_new, residual_inf, S) where S is the operator value field.
    """
    center = tab["center"]
    uc = u[center]
    up = u[tab["nb_plus"]]
    um = u[tab["nb_minus"]]
    d = (up - 2.0 * uc + um) * tab["inv_len2"][:, None]
    phi = Lam * np.maximum(d, 0.0) + lam * np.minimum(d, 0.0)
    pairs = tab["pairs"]
    if pairs is None:
        s2 = np.maximum.reduce(phi, axis=0)
    else:
        s2 = np.maximum.reduce(phi[pairs[:, 0]] + phi[pairs[:, 1]], axis=0)
    if b != 0.0:
        inv1 = tab["inv_len"][:, None]
        gp = (up - uc) * inv1
        gm = (uc - um) * inv1
        grad = np.maximum(np.maximum.reduce(np.maximum(gp, -gm), axis=0), 0.0)
        if c != 0.0:
            s_val = (s2 + b * grad) - c * uc
        else:
            s_val = s2 + b * grad
    else:
        if c != 0.0:
            s_val = s2 - c * uc
        else:
            s_val = s2
    r = s_val - f_int
    u_new = u.copy()
    u_new[center] = uc + tau * r
    residual = float(np.max(np.abs(r))) if r.size else 0.0
    return u_new, residual, s_val
