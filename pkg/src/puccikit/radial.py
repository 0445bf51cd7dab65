"""Closed-form radial profiles and the maximum-principle checks they carry.

Profiles are radial functions g(|x|) whose Hessians have the eigenvalue pair
(g''(r) radial, g'(r)/r tangential with multiplicity n-1); everything the
operators see is assembled from that spectrum.
"""

import math
from dataclasses import dataclass

import numpy as np

from .linalg import InputError, SymMat
from .operators import Ellipticity, pucci_plus_p


class ParameterError(ValueError):
    """Model parameters outside the admissible regime."""


class KinkError(ValueError):
    """Evaluation requested at a non-smooth gluing radius."""


_KINDS = ("power", "log", "sine_cap", "quadratic_barrier")


@dataclass(frozen=True)
class RadialProfile:
    """One of: power(alpha) = r^-alpha, log(R) = log(R/r),
    sine_cap(eps) = the flat-cap/sine counterexample profile,
    quadratic_barrier(gamma, offset) = offset - gamma*r^2.
    """

    kind: str
    n: int
    alpha: float = 0.0
    R: float = 0.0
    eps: float = 0.0
    gamma: float = 0.0
    offset: float = 0.0

    def __post_init__(self):
        if self.kind not in _KINDS:
            raise InputError(f"unknown profile kind {self.kind!r}")
        if self.n < 1:
            raise InputError("dimension must be >= 1")
        if self.kind == "power" and self.alpha <= 0.0:
            raise ParameterError("power profile needs alpha > 0")
        if self.kind == "log" and self.R <= 0.0:
            raise ParameterError("log profile needs R > 0")
        if self.kind == "sine_cap" and not (0.0 < self.eps < math.pi / 6.0):
            raise ParameterError("sine cap needs 0 < eps < pi/6")
        if self.kind == "quadratic_barrier" and self.gamma < 0.0:
            raise ParameterError("barrier needs gamma >= 0")

    @property
    def glue_radius(self):
        if self.kind != "sine_cap":
            raise InputError("only the sine cap has a gluing radius")
        return math.pi / 2.0 - self.eps / 2.0

    @property
    def outer_radius(self):
        if self.kind != "sine_cap":
            raise InputError("only the sine cap has an outer radius")
        return math.pi / 2.0 + self.eps / 2.0

    def _guard(self, r):
        if r <= 0.0:
            raise InputError("radius must be positive")
        if self.kind == "log" and r >= self.R:
            raise InputError("log profile defined for r < R")
        if self.kind == "sine_cap":
            if abs(r - self.glue_radius) < 1e-12:
                raise KinkError("gluing radius is not a smooth point")
            if r > self.outer_radius:
                raise InputError("sine cap defined for r <= pi/2 + eps/2")

    def g(self, r):
        self._guard(r)
        if self.kind == "power":
            return r ** (-self.alpha)
        if self.kind == "log":
            return math.log(self.R / r)
        if self.kind == "quadratic_barrier":
            return self.offset - self.gamma * r * r
        if r < self.glue_radius:
            return math.cos(self.eps / 2.0)
        return math.sin(r)

    def g1(self, r):
        self._guard(r)
        if self.kind == "power":
            return -self.alpha * r ** (-self.alpha - 1.0)
        if self.kind == "log":
            return -1.0 / r
        if self.kind == "quadratic_barrier":
            return -2.0 * self.gamma * r
        if r < self.glue_radius:
            return 0.0
        return math.cos(r)

    def g2(self, r):
        self._guard(r)
        if self.kind == "power":
            return self.alpha * (self.alpha + 1.0) * r ** (-self.alpha - 2.0)
        if self.kind == "log":
            return 1.0 / (r * r)
        if self.kind == "quadratic_barrier":
            return -2.0 * self.gamma
        if r < self.glue_radius:
            return 0.0
        return -math.sin(r)

    def glue_check(self):
        """One-sided limits at the sine-cap gluing radius.

        The profile is continuous with a non-negative outward jump in g'
        (a convex corner: no C^2 test function touches from above, so the
        subsolution property is vacuous there).
        """
        r0 = self.glue_radius
        inner_value = math.cos(self.eps / 2.0)
        outer_value = math.sin(r0)
        jump = math.cos(r0) - 0.0
        return {
            "radius": r0,
            "value_inner": inner_value,
            "value_outer": outer_value,
            "value_jump": outer_value - inner_value,
            "g1_inner": 0.0,
            "g1_outer": math.cos(r0),
            "g1_jump": jump,
            "convex_corner": jump >= 0.0,
        }


@dataclass(frozen=True)
class ModelParams:
    """Coefficients of the model equation P^+(D^2 u) + b|Du| - c u = f."""

    lam: float
    Lam: float
    p: int
    delta: float
    b: float = 0.0
    c: float = 0.0
    f_minus_norm: float = 0.0

    def __post_init__(self):
        if not (0.0 < self.lam <= self.Lam):
            raise InputError("need 0 < lam <= Lam")
        if self.p < 1:
            raise InputError("order p must be >= 1")
        if self.delta <= 0.0:
            raise InputError("domain radius must be positive")
        if self.b < 0.0 or self.c < 0.0 or self.f_minus_norm < 0.0:
            raise InputError("b, c and ||f^-|| must be non-negative")

    def ellipticity(self):
        return Ellipticity(self.lam, self.Lam, self.p)


def radial_hessian_spectrum(profile, r):
    """(e_rad, e_tan, mult_tan) of the Hessian of g(|x|) at radius r."""
    return profile.g2(r), profile.g1(r) / r, profile.n - 1


def hessian_from_radial(profile, r):
    """Diagonal representative of the radial Hessian spectrum."""
    e_rad, e_tan, mult = radial_hessian_spectrum(profile, r)
    return SymMat.from_diag([e_rad] + [e_tan] * mult)


def alpha_star(lam, Lam, p):
    """Critical fundamental-solution exponent (lam/Lam)(p-1) - 1.

    May be negative; admissibility is the caller's check.
    """
    if not (0.0 < lam <= Lam):
        raise InputError("need 0 < lam <= Lam")
    if p < 1:
        raise InputError("order p must be >= 1")
    return (lam / Lam) * (p - 1.0) - 1.0


def fundamental_residual(params, r, n, alpha=None, R=10.0):
    """Value of P^+ on the radial profile r^-alpha (log(R/r) at alpha = 0).

    With alpha = alpha_star (the default) the residual vanishes; subcritical
    alpha < alpha_star makes it strictly negative. Requires b = c = 0.
    """
    if params.b != 0.0 or params.c != 0.0:
        raise ParameterError("fundamental solutions concern the pure case b = c = 0")
    astar = alpha_star(params.lam, params.Lam, params.p)
    if astar < 0.0:
        raise ParameterError("alpha* < 0: no fundamental solution in this regime")
    if alpha is None:
        alpha = astar
    if alpha < 0.0:
        raise ParameterError("alpha must be >= 0")
    if n < params.p:
        raise InputError("ambient dimension must be at least p")
    if alpha == 0.0:
        if r >= R:
            raise InputError("log profile defined for r < R")
        profile = RadialProfile("log", n, R=R)
    else:
        profile = RadialProfile("power", n, alpha=alpha)
    hess = hessian_from_radial(profile, r)
    return pucci_plus_p(hess, params.ellipticity())


def counterexample_check(eps, lam, Lam, p, n, r):
    """Maximum-principle counterexample data at radius r in the annulus.

    The profile is the flat cap cos(eps/2) glued to sin|x| on
    [pi/2 - eps/2, pi/2 + eps/2], with gradient coefficient
    b = lam*p/(delta - eps), delta = pi/2 + eps/2. Returns the subsolution
    quantity P^+(D^2 u) + b|Du| at r (must be >= 0), the paper-side chain
    lower bound, and the interior/boundary maxima showing the violation.
    """
    if not (0.0 < eps < math.pi / 6.0):
        raise ParameterError("need 0 < eps < pi/6")
    if not (1 <= p < n):
        raise ParameterError("counterexample needs 1 <= p < n")
    if not (0.0 < lam <= Lam):
        raise InputError("need 0 < lam <= Lam")
    delta = math.pi / 2.0 + eps / 2.0
    r_in = math.pi / 2.0 - eps / 2.0
    if not (r_in <= r <= delta):
        raise InputError("radius must lie in the annulus")
    b = lam * p / (delta - eps)
    # Hessian spectrum on the sine piece: radial -sin r, tangential cos(r)/r.
    hess = SymMat.from_diag([-math.sin(r)] + [math.cos(r) / r] * (n - 1))
    ell = Ellipticity(lam, Lam, p)
    quantity = pucci_plus_p(hess, ell) + b * abs(math.cos(r))
    cosr = math.cos(r)
    chain_lb = (p / r) * (
        Lam * max(cosr, 0.0) - lam * max(-cosr, 0.0) + lam * abs(cosr)
    )
    boundary_max = math.cos(eps / 2.0)
    shell_volume_ratio = 1.0 - ((delta - eps) / delta) ** n
    return {
        "eps": eps,
        "delta": delta,
        "b": b,
        "radius": r,
        "quantity": quantity,
        "chain_lower_bound": chain_lb,
        "subsolution_ok": quantity >= -1e-12,
        "interior_max": 1.0,
        "boundary_max": boundary_max,
        "violation_margin": 1.0 - boundary_max,
        "bdelta_over_lam_p": b * delta / (lam * p),
        "shell_volume_ratio": shell_volume_ratio,
    }


def barrier_value_and_residual(params, r, boundary_limsup):
    """Barrier v = gamma*(delta^2 - r^2) + boundary_limsup for c = 0.

    gamma = ||f^-|| / (2(lam*p - b*delta)); requires b*delta < lam*p.
    Returns (value, residual) with residual = P^+(D^2 v) + b|Dv| + ||f^-||,
    which is <= 0 on [0, delta] (0 at r = delta when b > 0).
    """
    if params.c != 0.0:
        raise ParameterError("use barrier_c_value when c > 0")
    gap = params.lam * params.p - params.b * params.delta
    if gap <= 0.0:
        raise ParameterError("requires b*delta < lam*p")
    if not (0.0 <= r <= params.delta):
        raise InputError("radius must lie in [0, delta]")
    gamma = params.f_minus_norm / (2.0 * gap)
    value = gamma * (params.delta**2 - r * r) + boundary_limsup
    hess = SymMat.from_diag([-2.0 * gamma] * max(params.p, 2))
    ell = Ellipticity(params.lam, params.Lam, params.p)
    grad_norm = 2.0 * gamma * r
    residual = pucci_plus_p(hess, ell) + params.b * grad_norm + params.f_minus_norm
    return value, residual


def barrier_c_value(params, eps_hat, r, boundary_limsup_plus):
    """Barrier for c > 0: v = gamma*(delta^2 + (2/c)(lam*p - b*delta)^- +
    eps_hat - r^2) + boundary_limsup_plus, gamma = ||f^-|| /
    (2(lam*p - b*delta)^+ + c*eps_hat).

    Returns (value, residual) with residual = P^+(D^2 v) + b|Dv| - c v
    + ||f^-|| <= 0 for r <= delta (boundary_limsup_plus must be >= 0).
    """
    if params.c <= 0.0:
        raise ParameterError("use barrier_value_and_residual when c = 0")
    if eps_hat <= 0.0:
        raise ParameterError("eps_hat must be positive")
    if boundary_limsup_plus < 0.0:
        raise InputError("the u^+ boundary limsup is non-negative")
    if not (0.0 <= r <= params.delta):
        raise InputError("radius must lie in [0, delta]")
    gap = params.lam * params.p - params.b * params.delta
    gap_plus = max(gap, 0.0)
    gap_minus = max(-gap, 0.0)
    gamma = params.f_minus_norm / (2.0 * gap_plus + params.c * eps_hat)
    value = (
        gamma
        * (params.delta**2 + (2.0 / params.c) * gap_minus + eps_hat - r * r)
        + boundary_limsup_plus
    )
    hess = SymMat.from_diag([-2.0 * gamma] * max(params.p, 2))
    ell = Ellipticity(params.lam, params.Lam, params.p)
    residual = (
        pucci_plus_p(hess, ell)
        + params.b * (2.0 * gamma * r)
        - params.c * value
        + params.f_minus_norm
    )
    return value, residual


def mp_constant(params, eps_hat=None):
    """A priori bound constant C in sup u <= limsup u(+) + C ||f^-||.

    c = 0: C = delta^2 / (2(lam*p - b*delta)), requires b*delta < lam*p.
    c > 0: C = (delta^2 + (2/c)(lam*p - b*delta)^- + eps_hat) /
    (2(lam*p - b*delta)^+ + c*eps_hat); eps_hat defaults to the log-grid
    minimizer (see mp_constant_detail).
    """
    return mp_constant_detail(params, eps_hat)[0]


def mp_constant_detail(params, eps_hat=None):
    """(C, eps_hat) with eps_hat the auxiliary constant actually used."""
    gap = params.lam * params.p - params.b * params.delta
    if params.c == 0.0:
        if gap <= 0.0:
            raise ParameterError("requires b*delta < lam*p when c = 0")
        return params.delta**2 / (2.0 * gap), None

    def constant(e):
        return (params.delta**2 + (2.0 / params.c) * max(-gap, 0.0) + e) / (
            2.0 * max(gap, 0.0) + params.c * e
        )

    if eps_hat is not None:
        if eps_hat <= 0.0:
            raise ParameterError("eps_hat must be positive")
        return constant(eps_hat), eps_hat
    grid = np.logspace(-6.0, 6.0, 241)
    values = [constant(e) for e in grid]
    k = int(np.argmin(values))
    return values[k], float(grid[k])
