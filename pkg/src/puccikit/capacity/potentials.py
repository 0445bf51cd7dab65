"""Riesz potentials of discrete measures and the supersolution bound.

The potential of a weighted atom set is evaluated in closed form together
with its gradient and Hessian (per-atom radial/tangential eigenstructure
rotated to the atom direction), so the extremal operator can be applied
exactly off the support.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..linalg import InputError, SymMat
from ..operators import pucci_plus_batch, pucci_plus_p
from ..radial import ParameterError, alpha_star
from .kernels import KernelParams, supersolution_integrand

# Separations below this are treated as atom hits (blow-up, not overflow).
ATOM_HIT_TOL = 1e-300


def _offsets(mu, x):
    x = np.asarray(x, dtype=np.float64)
    if x.shape != (mu.dim,):
        raise InputError("point dimension must match the atoms")
    diff = x[None, :] - mu.atoms
    dist = np.sqrt((diff * diff).sum(axis=-1))
    return diff, dist


def potential(mu, k, x):
    """V^mu(x) = sum_j w_j Phi(x - y_j).

    Returns math.inf (a first-class blow-up value, not an overflow) when x
    sits on an atom of positive weight; zero-weight atoms are skipped.
    """
    diff, dist = _offsets(mu, x)
    hit = dist <= ATOM_HIT_TOL
    if np.any(hit & (mu.weights > 0.0)):
        return math.inf
    live = ~hit
    if not np.any(live):
        return 0.0
    return float(mu.weights[live] @ k.value_r_many(dist[live]))


def potential_gradient(mu, k, x):
    """Gradient of the potential; x must be off the support."""
    diff, dist = _offsets(mu, x)
    if np.any(dist <= ATOM_HIT_TOL):
        raise InputError("gradient requested on an atom")
    g1 = _g1_many(k, dist)
    return (mu.weights * g1 / dist) @ diff


def potential_hessian(mu, k, x):
    """Hessian of the potential as a SymMat; x must be off the support."""
    h = _hessian_stack(mu, k, np.asarray(x, dtype=np.float64)[None])[0]
    return SymMat.from_dense((h + h.T) / 2.0)


def _g1_many(k, r):
    if k.alpha == 0.0:
        return -1.0 / r
    return -k.alpha * r ** (-k.alpha - 1.0)


def _g2_many(k, r):
    if k.alpha == 0.0:
        return 1.0 / (r * r)
    return k.alpha * (k.alpha + 1.0) * r ** (-k.alpha - 2.0)


def _hessian_stack(mu, k, xs):
    """Hessians of the potential at a stack of points (B, n)."""
    diff = xs[:, None, :] - mu.atoms[None, :, :]  # (B, N, n)
    dist = np.sqrt((diff * diff).sum(axis=-1))  # (B, N)
    if np.any(dist <= ATOM_HIT_TOL):
        raise InputError("hessian requested on an atom")
    unit = diff / dist[..., None]
    g1 = _g1_many(k, dist)
    g2 = _g2_many(k, dist)
    tan = g1 / dist  # tangential eigenvalue, multiplicity n-1
    w = mu.weights[None, :]
    outer = np.einsum("bji,bjk->bjik", unit, unit)
    eye = np.eye(mu.dim)
    per_atom = (
        (g2 - tan)[..., None, None] * outer
        + tan[..., None, None] * eye[None, None]
    )
    return np.einsum("bj,bjik->bik", w, per_atom)


def rho_and_K(lam, Lam, p, alpha, b):
    """Constants of the potential supersolution bound.

    b = 0: K = 0 (rho unused, returned as inf), valid for alpha <= alpha*.
    b > 0: needs alpha < alpha* strictly; rho = (lam(p-1) - Lam(alpha+1))/b
    and K = (alpha + [alpha=0]) * b / rho^(alpha+1).
    """
    if alpha < 0.0:
        raise ParameterError("alpha must be >= 0")
    astar = alpha_star(lam, Lam, p)
    if b < 0.0:
        raise ParameterError("b must be non-negative")
    if b == 0.0:
        if alpha > astar:
            raise ParameterError("needs alpha <= alpha* when b = 0")
        return math.inf, 0.0
    rho = (lam * (p - 1.0) - Lam * (alpha + 1.0)) / b
    if rho <= 0.0:
        raise ParameterError("needs alpha < alpha* strictly when b > 0")
    weight = alpha + (1.0 if alpha == 0.0 else 0.0)
    return rho, weight * b / rho ** (alpha + 1.0)


def potential_supersolution_residual(mu, k, params, x):
    """P^+(D^2 V)(x) + b |DV(x)| - K; non-positive off the support."""
    return float(supersolution_residual_many(mu, k, params, [x])[0])


def supersolution_residual_many(mu, k, params, xs):
    """Vector of residuals at a stack of points (batched Hessian + eigen)."""
    if k.n != mu.dim:
        raise InputError("kernel dimension must match atoms")
    _, kk = rho_and_K(params.lam, params.Lam, params.p, k.alpha, params.b)
    xs = np.asarray(xs, dtype=np.float64)
    if xs.ndim == 1:
        xs = xs[None]
    hs = _hessian_stack(mu, k, xs)
    hs = (hs + hs.transpose(0, 2, 1)) / 2.0
    vals = pucci_plus_batch(hs, params.lam, params.Lam, params.p)
    if params.b != 0.0:
        grads = np.stack([potential_gradient(mu, k, x) for x in xs])
        vals = vals + params.b * np.linalg.norm(grads, axis=1)
    return vals - kk


def per_atom_bound_check(mu, k, params, x):
    """Weighted per-atom integrand sum; the subadditivity transfer bound."""
    _, dist = _offsets(mu, x)
    if np.any(dist <= ATOM_HIT_TOL):
        raise InputError("point sits on an atom")
    vals = np.asarray([supersolution_integrand(k, params, r) for r in dist])
    return float(mu.weights @ vals)


@dataclass(frozen=True)
class FSigmaPotential:
    """Truncated series v_M = sum_{m<=M} c_m 2^-m w_m for an F_sigma set.

    c_m = 1 / max(w_m(x0), 1), so v_M(x0) <= 1; each term inherits the
    supersolution bound, and the coefficient sum is < 1, so v_M does too.
    """

    measures: tuple
    kernel: KernelParams
    x0: np.ndarray
    coefficients: tuple

    @classmethod
    def build(cls, measures, k, x0, truncation=None):
        measures = tuple(measures)
        if truncation is not None:
            measures = measures[:truncation]
        if not measures:
            raise InputError("need at least one compact piece")
        x0 = np.asarray(x0, dtype=np.float64)
        coeffs = []
        for m, mu in enumerate(measures, start=1):
            w_at_x0 = potential(mu, k, x0)
            if math.isinf(w_at_x0):
                raise InputError("x0 must avoid every compact piece")
            c_m = 1.0 / max(w_at_x0, 1.0)
            coeffs.append(c_m / 2.0**m)
        return cls(measures, k, x0, tuple(coeffs))

    def value(self, x):
        total = 0.0
        for c, mu in zip(self.coefficients, self.measures):
            v = potential(mu, self.kernel, x)
            if math.isinf(v):
                return math.inf
            total += c * v
        return total

    def residual(self, params, x):
        """P^+(D^2 v_M) + b |D v_M| - K; non-positive off all supports."""
        hess = np.zeros((self.kernel.n, self.kernel.n))
        grad = np.zeros(self.kernel.n)
        for c, mu in zip(self.coefficients, self.measures):
            hess = hess + c * _hessian_stack(mu, self.kernel, np.asarray(x)[None])[0]
            grad = grad + c * potential_gradient(mu, self.kernel, x)
        _, kk = rho_and_K(
            params.lam, params.Lam, params.p, self.kernel.alpha, params.b
        )
        val = pucci_plus_p(
            SymMat.from_dense((hess + hess.T) / 2.0), params.ellipticity()
        )
        return val + params.b * float(np.linalg.norm(grad)) - kk
