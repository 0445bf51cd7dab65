"""Riesz kernels and their radial derivatives."""

import math
from dataclasses import dataclass

import numpy as np

from ..linalg import InputError


class KernelSingularity(ValueError):
    """Kernel evaluated on its diagonal x = y."""


@dataclass(frozen=True)
class KernelParams:
    """Riesz kernel of exponent alpha in ambient dimension n.

    alpha > 0: |x|^-alpha; alpha = 0: log(2d/|x|) with d the radius of the
    ball carrying the compact sets.
    """

    alpha: float
    n: int
    d: float = 1.0

    def __post_init__(self):
        if not (0.0 <= self.alpha < self.n):
            raise InputError("need 0 <= alpha < n")
        if self.d <= 0.0:
            raise InputError("scale d must be positive")

    def value_r(self, r):
        """Kernel profile at separation r > 0."""
        if r <= 0.0:
            raise KernelSingularity("kernel diverges at zero separation")
        if self.alpha == 0.0:
            return math.log(2.0 * self.d / r)
        return r ** (-self.alpha)

    def value_r_many(self, r):
        r = np.asarray(r, dtype=np.float64)
        if np.any(r <= 0.0):
            raise KernelSingularity("kernel diverges at zero separation")
        if self.alpha == 0.0:
            return np.log(2.0 * self.d / r)
        return r ** (-self.alpha)

    def g1(self, r):
        """Radial first derivative of the kernel profile."""
        if self.alpha == 0.0:
            return -1.0 / r
        return -self.alpha * r ** (-self.alpha - 1.0)

    def g2(self, r):
        """Radial second derivative of the kernel profile."""
        if self.alpha == 0.0:
            return 1.0 / (r * r)
        return self.alpha * (self.alpha + 1.0) * r ** (-self.alpha - 2.0)

    @property
    def order_weight(self):
        """alpha + [alpha = 0], the weight in the supersolution integrand."""
        return self.alpha + (1.0 if self.alpha == 0.0 else 0.0)


def kernel_value(k, x, y):
    """Phi_alpha(x - y); raises KernelSingularity when x = y."""
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.shape != (k.n,):
        raise InputError("points must be length-n vectors")
    r = float(np.linalg.norm(x - y))
    return k.value_r(r)


def supersolution_integrand(k, params, r):
    """(alpha + [alpha=0]) * (Lam(alpha+1) - lam(p-1) + b r) / r^(alpha+2).

    The per-atom value of P^+(D^2 Phi) + b |D Phi| at separation r.
    """
    w = k.order_weight
    bracket = (
        params.Lam * (k.alpha + 1.0)
        - params.lam * (params.p - 1.0)
        + params.b * r
    )
    return w * bracket / r ** (k.alpha + 2.0)
