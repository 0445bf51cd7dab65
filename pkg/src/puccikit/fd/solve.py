"""Damped Jacobi fixed-point solver for the discrete extremal equation."""

from dataclasses import dataclass

import numpy as np

from .._backend import fd_sweep
from ..linalg import InputError
from ..radial import ParameterError, mp_constant
from .grid import GridField


@dataclass
class SolveReport:
    """Converged field plus the maximum-principle bookkeeping."""

    field: GridField
    residual_inf_norm: float
    iterations: int
    converged: bool
    interior_max: float
    boundary_max: float
    mp_bound_rhs: float
    f_minus_norm: float

    def summary(self):
        return {
            "residual_inf_norm": self.residual_inf_norm,
            "iterations": self.iterations,
            "converged": self.converged,
            "interior_max": self.interior_max,
            "boundary_max": self.boundary_max,
            "mp_bound_rhs": self.mp_bound_rhs,
            "f_minus_norm": self.f_minus_norm,
        }


def rhs_array(grid, f):
    """Right-hand side at interior nodes from a constant, callable or array."""
    ni = grid.interior_flat.size
    if callable(f):
        fx, fy = grid.interior_xy()
        return np.asarray([float(f(x, y)) for x, y in zip(fx, fy)])
    arr = np.asarray(f, dtype=np.float64)
    if arr.ndim == 0:
        return np.full(ni, float(arr))
    if arr.shape != (ni,):
        raise InputError("rhs array must match the interior node count")
    return arr


def time_step(params, h, width):
    """CFL-style damping keeping the update monotone."""
    return h * h / (
        2.0 * params.Lam * params.p * width * width
        + params.b * h * width
        + params.c * h * h
    )


def solve(grid, stencil, params, f=0.0, tol=1e-8, max_iter=500_000,
          allow_unstable=False, u0=None):
    """Iterate u <- u + tau (S_h[u] - f) to the discrete steady state.

    For c = 0 the stable regime b*delta < lam*p is required unless the
    caller opts into the counterexample regime with allow_unstable.
    """
    if params.p not in (1, 2):
        raise InputError("the 2-D scheme supports p in {1, 2}")
    delta = grid.domain.circumradius
    stable = params.c > 0.0 or params.b * delta < params.lam * params.p
    if not stable and not allow_unstable:
        raise ParameterError(
            "b*delta >= lam*p with c = 0; pass allow_unstable=True "
            "for counterexample studies"
        )
    tab = _tables_for_order(grid, params.p)
    f_int = rhs_array(grid, f)
    tau = time_step(params, grid.h, stencil.width)
    u = grid.values.copy() if u0 is None else np.asarray(u0, dtype=np.float64).copy()
    residual = np.inf
    iterations = 0
    converged = False
    for it in range(max_iter + 1):
        u_new, residual, _ = fd_sweep(
            u, f_int, tab, params.lam, params.Lam, params.b, params.c, tau
        )
        if residual <= tol:
            converged = True
            iterations = it
            break
        if it == max_iter:
            iterations = it
            break
        u = u_new
    field = GridField(grid, u)
    interior_max = field.interior_max()
    boundary_max = field.boundary_max()
    f_minus = float(np.max(np.maximum(-f_int, 0.0), initial=0.0))
    if params.c == 0.0 and stable:
        c_const = mp_constant(params)
        rhs = boundary_max + c_const * f_minus
    elif params.c > 0.0:
        c_const = mp_constant(params)
        rhs = max(boundary_max, 0.0) + c_const * f_minus
    else:
        rhs = float("nan")
    return SolveReport(
        field=field,
        residual_inf_norm=residual,
        iterations=iterations,
        converged=converged,
        interior_max=interior_max,
        boundary_max=boundary_max,
        mp_bound_rhs=rhs,
        f_minus_norm=f_minus,
    )


def _tables_for_order(grid, p):
    """Kernel tables in the mode matching the operator order."""
    tab = grid.build_tables()
    if p == 1:
        return dict(tab, pairs=None)
    if tab["pairs"] is None:
        raise InputError("order-2 scheme needs orthogonal arm pairs")
    return tab


def operator_field(grid, params, u=None, f=0.0):
    """One sweep's S_h values at interior nodes (no update applied)."""
    tab = _tables_for_order(grid, params.p)
    f_int = rhs_array(grid, f)
    tau = time_step(params, grid.h, grid.stencil.width)
    uu = grid.values if u is None else np.asarray(u, dtype=np.float64)
    _, _, s_val = fd_sweep(
        uu, f_int, tab, params.lam, params.Lam, params.b, params.c, tau
    )
    return s_val
