"""Per-node reference implementations of the discrete operators.

These mirror the sweep kernels one node at a time; the solver uses the
batched kernels, the tests use these to pin down monotonicity and
consistency node by node.
"""

import math

import numpy as np

from ..linalg import InputError
from .grid import OUTSIDE


def directional_second_diff(field, node, arm):
    """(u(x + |v|h vhat) - 2u(x) + u(x - |v|h vhat)) / (|v|h)^2.

    Exact for quadratics along the arm direction.
    """
    grid = field.grid
    dx, dy = arm
    off = dx * grid.ny + dy
    plus, minus = node + off, node - off
    if (
        grid.mask_flat[plus] == OUTSIDE
        or grid.mask_flat[minus] == OUTSIDE
        or grid.mask_flat[node] == OUTSIDE
    ):
        raise InputError("stencil endpoint leaves the masked domain")
    u = field.values
    step2 = (dx * dx + dy * dy) * grid.h * grid.h
    return (u[plus] - 2.0 * u[node] + u[minus]) / step2


def discrete_pucci_plus(field, node, ell, stencil):
    """Wide-stencil maximal operator at a node (p = 1 or 2, n = 2).

    p = 1: max over arms of Lam d+ - lam d-; p = 2: max over orthogonal
    arm pairs of the pair sum. Non-decreasing in every off-node value.
    """
    if ell.p not in (1, 2):
        raise InputError("the 2-D scheme supports p in {1, 2}")
    deltas = [directional_second_diff(field, node, arm) for arm in stencil.arms]
    phis = [
        ell.Lam * max(d, 0.0) + ell.lam * min(d, 0.0) for d in deltas
    ]
    if ell.p == 1:
        return max(phis)
    if not stencil.pairs:
        raise InputError("stencil has no orthogonal pairs")
    return max(phis[i] + phis[j] for i, j in stencil.pairs)


def discrete_gradient_norm(field, node, stencil):
    """Upwind |Du|: max over arms of max(D+_v, -D-_v, 0)."""
    grid = field.grid
    u = field.values
    best = 0.0
    for dx, dy in stencil.arms:
        off = dx * grid.ny + dy
        plus, minus = node + off, node - off
        if grid.mask_flat[plus] == OUTSIDE or grid.mask_flat[minus] == OUTSIDE:
            raise InputError("stencil endpoint leaves the masked domain")
        step = math.hypot(dx, dy) * grid.h
        fwd = (u[plus] - u[node]) / step
        bwd = (u[node] - u[minus]) / step
        best = max(best, fwd, -bwd)
    return best


def operator_value(field, node, params, stencil):
    """S_h[u] = discrete P^+ + b |Du|_h - c u at one node."""
    ell = params.ellipticity()
    val = discrete_pucci_plus(field, node, ell, stencil)
    if params.b != 0.0:
        val += params.b * discrete_gradient_norm(field, node, stencil)
    if params.c != 0.0:
        val -= params.c * field.values[node]
    return val


def quadratic_field(grid, a11, a12, a22, lin=(0.0, 0.0), const=0.0):
    """Node values of x^T A x / 2 + g.x + c on the whole lattice."""
    xs = grid.xs.reshape(-1)
    ys = grid.ys.reshape(-1)
    vals = (
        0.5 * (a11 * xs * xs + 2.0 * a12 * xs * ys + a22 * ys * ys)
        + lin[0] * xs
        + lin[1] * ys
        + const
    )
    return np.asarray(vals)
