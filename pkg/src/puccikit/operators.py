"""Degenerate Pucci operators of order p and their subspace restrictions.

The maximal operator weighs the positive parts of the top p eigenvalues by
Lam and the negative parts by lam; the minimal operator acts on the bottom p
eigenvalues with the duality-consistent weights (lam on positive parts, Lam
on negative parts), so P^-(X) = -P^+(-X) holds identically.
"""

from dataclasses import dataclass

import numpy as np

from .linalg import InputError, SymMat, as_symmat, eigen_sorted, eigh_batch

FRAME_ORTHO_TOL = 1e-12


@dataclass(frozen=True)
class Ellipticity:
    """Ellipticity interval [lam, Lam] and operator order p."""

    lam: float
    Lam: float
    p: int

    def __post_init__(self):
        if not (0.0 < self.lam <= self.Lam):
            raise InputError("need 0 < lam <= Lam")
        if self.p < 1 or self.p != int(self.p):
            raise InputError("order p must be a positive integer")


@dataclass(frozen=True)
class Frame:
    """Orthonormal basis (n x p columns) of a p-dimensional subspace."""

    basis: np.ndarray

    def __post_init__(self):
        basis = np.asarray(self.basis, dtype=np.float64)
        if basis.ndim != 2 or basis.shape[1] > basis.shape[0]:
            raise InputError("frame must be n x p with p <= n")
        gram = basis.T @ basis
        if np.max(np.abs(gram - np.eye(basis.shape[1]))) > FRAME_ORTHO_TOL:
            raise InputError("frame columns are not orthonormal")
        basis.setflags(write=False)
        object.__setattr__(self, "basis", basis)

    @property
    def n(self):
        return self.basis.shape[0]

    @property
    def p(self):
        return self.basis.shape[1]

    @classmethod
    def from_axes(cls, n, axes):
        """Frame spanned by standard basis vectors E^i (0-based indices)."""
        basis = np.zeros((n, len(axes)))
        for col, i in enumerate(axes):
            basis[i, col] = 1.0
        return cls(basis)

    def projector(self):
        return self.basis @ self.basis.T


def _plus_from_eigs(evals, lam, Lam, p):
    top = evals[..., evals.shape[-1] - p:]
    return Lam * np.maximum(top, 0.0).sum(axis=-1) - lam * np.maximum(
        -top, 0.0
    ).sum(axis=-1)


def _minus_from_eigs(evals, lam, Lam, p):
    bot = evals[..., :p]
    return lam * np.maximum(bot, 0.0).sum(axis=-1) - Lam * np.maximum(
        -bot, 0.0
    ).sum(axis=-1)


def pucci_plus_p(X, ell):
    """Maximal Pucci operator of order p."""
    X = as_symmat(X)
    if ell.p > X.n:
        raise InputError("order p exceeds matrix dimension")
    ev = eigen_sorted(X).eigenvalues
    return float(_plus_from_eigs(ev, ell.lam, ell.Lam, ell.p))


def pucci_minus_p(X, ell):
    """Minimal Pucci operator of order p (duality-consistent convention)."""
    X = as_symmat(X)
    if ell.p > X.n:
        raise InputError("order p exceeds matrix dimension")
    ev = eigen_sorted(X).eigenvalues
    return float(_minus_from_eigs(ev, ell.lam, ell.Lam, ell.p))


def pucci_plus_batch(stack, lam, Lam, p):
    """Maximal operator on a (B, n, n) stack (sweep-scale helper)."""
    evals, _ = eigh_batch(stack)
    return _plus_from_eigs(evals, lam, Lam, p)


def pucci_minus_batch(stack, lam, Lam, p):
    evals, _ = eigh_batch(stack)
    return _minus_from_eigs(evals, lam, Lam, p)


def pos_neg_parts(X):
    """Spectral decomposition X = X+ - X- with X+, X- >= 0 and X+ X- = 0."""
    X = as_symmat(X)
    spec = eigen_sorted(X)
    q = spec.eigenvectors
    plus = np.maximum(spec.eigenvalues, 0.0)
    minus = np.maximum(-spec.eigenvalues, 0.0)
    xp = (q * plus) @ q.T
    xm = (q * minus) @ q.T
    return (
        SymMat.from_dense((xp + xp.T) / 2.0),
        SymMat.from_dense((xm + xm.T) / 2.0),
    )


def project_subspace(X, W):
    """P_W X P_W, the quadratic form restricted to the subspace."""
    X = as_symmat(X)
    if W.n != X.n:
        raise InputError("frame and matrix dimensions differ")
    pw = W.projector()
    m = pw @ X.dense() @ pw
    return SymMat.from_dense((m + m.T) / 2.0)


def _restricted_eigs(X, W):
    # Nonzero spectrum of P_W X P_W equals the spectrum of B^T X B, so the
    # positive/negative part traces can be read off the p x p compression.
    m = W.basis.T @ X.dense() @ W.basis
    m = (m + m.T) / 2.0
    evals, _ = eigh_batch(m[None])
    return evals[0]


def pucci_plus_W(X, W, ell):
    """Maximal Pucci operator restricted to the subspace W."""
    X = as_symmat(X)
    if W.n != X.n:
        raise InputError("frame and matrix dimensions differ")
    if W.p != ell.p:
        raise InputError("frame dimension must equal the operator order")
    ev = _restricted_eigs(X, W)
    pos = float(np.maximum(ev, 0.0).sum())
    neg = float(np.maximum(-ev, 0.0).sum())
    return ell.Lam * pos - ell.lam * neg


def pucci_minus_W(X, W, ell):
    """Minimal Pucci operator restricted to W (duality-consistent)."""
    X = as_symmat(X)
    if W.n != X.n:
        raise InputError("frame and matrix dimensions differ")
    if W.p != ell.p:
        raise InputError("frame dimension must equal the operator order")
    ev = _restricted_eigs(X, W)
    pos = float(np.maximum(ev, 0.0).sum())
    neg = float(np.maximum(-ev, 0.0).sum())
    return ell.lam * pos - ell.Lam * neg


def linear_functional(A, W, X):
    """L_{A|W} X = Tr(A_W X_W)."""
    A = as_symmat(A)
    X = as_symmat(X)
    if A.n != X.n or W.n != X.n:
        raise InputError("dimension mismatch")
    g = W.basis.T @ A.dense() @ W.basis
    h = W.basis.T @ X.dense() @ W.basis
    return float(np.trace(g @ h))


def maximizing_frame(X, p):
    """Frame spanned by eigenvectors of the top p eigenvalues.

    Ties are broken by the deterministic eigen routine's column order;
    attainment of the order-p supremum does not depend on the choice.
    """
    X = as_symmat(X)
    if p > X.n:
        raise InputError("order p exceeds matrix dimension")
    spec = eigen_sorted(X)
    return Frame(spec.eigenvectors[:, X.n - p:].copy())


def sample_frame(n, p, rng):
    """Random frame: Gaussian n x p, modified Gram-Schmidt, re-orthogonalized."""
    a = rng.standard_normal((n, p))
    return Frame(_orthonormalize(a[None])[0])


def _orthonormalize(batch):
    """MGS with one re-orthogonalization pass on a (S, n, p) stack."""
    q = np.array(batch, dtype=np.float64)
    s, n, p = q.shape
    for j in range(p):
        v = q[:, :, j]
        for _ in range(2):
            for i in range(j):
                qi = q[:, :, i]
                v = v - np.einsum("sn,sn->s", qi, v)[:, None] * qi
        norm = np.sqrt(np.einsum("sn,sn->s", v, v))
        if np.any(norm < 1e-12):
            raise InputError("degenerate frame sample")
        q[:, :, j] = v / norm[:, None]
    return q


def _sampled_frame_values(X, ell, samples, seed, minimal):
    X = as_symmat(X)
    n, p = X.n, ell.p
    if samples < 1:
        raise InputError("need at least one sample")
    rng = np.random.default_rng(seed)
    dense = X.dense()
    best = None
    chunk = 4096
    done = 0
    while done < samples:
        size = min(chunk, samples - done)
        frames = _orthonormalize(rng.standard_normal((size, n, p)))
        comp = np.einsum("sip,ij,sjq->spq", frames, dense, frames)
        comp = (comp + comp.transpose(0, 2, 1)) / 2.0
        evals, _ = eigh_batch(comp)
        pos = np.maximum(evals, 0.0).sum(axis=1)
        neg = np.maximum(-evals, 0.0).sum(axis=1)
        if minimal:
            vals = ell.lam * pos - ell.Lam * neg
            cand = float(vals.min())
            best = cand if best is None else min(best, cand)
        else:
            vals = ell.Lam * pos - ell.lam * neg
            cand = float(vals.max())
            best = cand if best is None else max(best, cand)
        done += size
    return best


def grassmannian_sup_estimate(X, ell, samples, seed, include_frames=()):
    """Max of P^+_W over `samples` random frames (plus any injected ones).

    Monotone non-decreasing in `samples` for a fixed seed (frames are drawn
    sequentially from one generator stream), and never exceeds the order-p
    closed form beyond roundoff.
    """
    best = _sampled_frame_values(X, ell, samples, seed, minimal=False)
    for frame in include_frames:
        best = max(best, pucci_plus_W(X, frame, ell))
    return best


def grassmannian_inf_estimate(X, ell, samples, seed, include_frames=()):
    """Min of P^-_W over sampled frames; dual of the sup estimate."""
    best = _sampled_frame_values(X, ell, samples, seed, minimal=True)
    for frame in include_frames:
        best = min(best, pucci_minus_W(X, frame, ell))
    return best


def check_inclusions(X, lam, Lam, p):
    """Inclusion chain between order-p operators at (n/p)-scaled constants
    and the full Pucci extremal operators.

    Requires 1 <= p < n (p = n collapses to equalities).
    """
    X = as_symmat(X)
    n = X.n
    if not (1 <= p < n):
        raise InputError("inclusions are stated for 1 <= p < n")
    ev = eigen_sorted(X).eigenvalues
    scale = n / p
    lo = float(_minus_from_eigs(ev, scale * lam, scale * Lam, p))
    m_minus = float(_minus_from_eigs(ev, lam, Lam, n))
    m_plus = float(_plus_from_eigs(ev, lam, Lam, n))
    hi = float(_plus_from_eigs(ev, scale * lam, scale * Lam, p))
    violation = max(lo - m_minus, m_minus - m_plus, m_plus - hi)
    return {
        "pucci_minus_scaled_p": lo,
        "m_minus": m_minus,
        "m_plus": m_plus,
        "pucci_plus_scaled_p": hi,
        "max_violation": violation,
        "ok": violation <= 1e-10 * max(1.0, X.max_abs()),
    }


def nonuniform_ellipticity_witness(t=1.0):
    """2x2 witness that the order-1 operator is not uniformly elliptic.

    Returns (X, P, gap) with X = diag(1, 0), P = t*diag(0, 1) >= 0 and
    gap = e_2(X + P) - e_2(X), which is 0 for every t in (0, 1] while
    Tr(P) = t > 0.
    """
    if t <= 0.0:
        raise InputError("t must be positive")
    X = SymMat.from_diag([1.0, 0.0])
    P = SymMat.from_diag([0.0, t])
    e2_sum = eigen_sorted(X + P).eigenvalues[-1]
    e2_x = eigen_sorted(X).eigenvalues[-1]
    return X, P, float(e2_sum - e2_x)
