"""Grid experiments: the MP counterexample, the extended maximum principle
with the potential perturbation, the comparison principle, and removability
by annulus shrinking."""

import math

import numpy as np

from ..capacity import DiscreteMeasure, KernelParams, rho_and_K
from ..linalg import InputError
from ..radial import (
    ModelParams,
    ParameterError,
    alpha_star,
    mp_constant,
)
from .grid import Annulus, Disk, Grid2D, GridField
from .solve import operator_field, solve
from .stencil import Stencil

BOUNDARY_FUNCTIONS = {
    "zero": lambda x, y: 0.0,
    "x": lambda x, y: x,
    "xx_minus_yy": lambda x, y: x * x - y * y,
}


def sine_cap_value(eps):
    """Radial counterexample profile as a plane function (kink-tolerant)."""
    glue = math.pi / 2.0 - eps / 2.0

    def value(x, y):
        r = math.hypot(x, y)
        if r <= glue:
            return math.cos(eps / 2.0)
        return math.sin(r)

    return value


def verify_profile(eps, lam=1.0, Lam=1.0, p=1, h=1.0 / 64.0, width=4):
    """Evaluate the counterexample profile on a disk grid and check the
    discrete subsolution property S_h[u] >= -O(h) plus the MP violation."""
    if not (0.0 < eps < math.pi / 6.0):
        raise ParameterError("need 0 < eps < pi/6")
    delta = math.pi / 2.0 + eps / 2.0
    b = lam * p / (delta - eps)
    params = ModelParams(lam=lam, Lam=Lam, p=p, delta=delta, b=b)
    stencil = Stencil(width)
    value = sine_cap_value(eps)
    grid = Grid2D(Disk(delta), h, stencil, boundary_fn=value)
    u = grid.values.copy()
    fx = grid.xs.reshape(-1)[grid.interior_flat]
    fy = grid.ys.reshape(-1)[grid.interior_flat]
    u[grid.interior_flat] = [value(x, y) for x, y in zip(fx, fy)]
    s_val = operator_field(grid, params, u=u, f=0.0)
    field = GridField(grid, u)
    interior_max = field.interior_max()
    boundary_max = field.boundary_max()
    min_residual = float(np.min(s_val))
    return {
        "eps": eps,
        "h": h,
        "stencil_width": width,
        "b": b,
        "delta": delta,
        "bdelta_over_lam_p": b * delta / (lam * p),
        "min_residual": min_residual,
        "residual_floor": -5.0 * h,
        "subsolution_ok": min_residual >= -5.0 * h,
        "interior_max": interior_max,
        "boundary_max": boundary_max,
        "mp_violation_margin": interior_max - boundary_max,
        "mp_violated": interior_max > boundary_max,
    }


def emp_experiment(
    h=1.0 / 32.0,
    eps_seq=(1.0, 0.1, 0.01),
    spike=1.0,
    params=None,
    boundary="zero",
    f_const=0.0,
    e_angle=math.pi / 2.0,
    puncture=True,
    width=1,
    tol=1e-10,
):
    """Extended-maximum-principle experiment on the unit disk.

    A boundary node set E (one node, unless puncture is False) carries an
    arbitrary spike value. The punctured solve ignores E entirely; for each
    eps the perturbation w_eps = u - eps*v (v the blow-up potential at E)
    is checked against the a priori bound with E excluded from the boundary
    max, and the reconstructed bound on sup u is compared with the
    EMP right-hand side. The slack decreases to 0 with eps.
    """
    if params is None:
        params = ModelParams(lam=1.0, Lam=1.0, p=2, delta=1.0)
    g = BOUNDARY_FUNCTIONS[boundary] if isinstance(boundary, str) else boundary
    stencil = Stencil(width)
    delta = params.delta
    base = Grid2D(Disk(delta), h, stencil, boundary_fn=g)
    report = {
        "h": h,
        "spike": spike,
        "eps_seq": list(eps_seq),
        "params": {
            "lambda": params.lam,
            "Lambda": params.Lam,
            "p": params.p,
            "b": params.b,
            "c": params.c,
            "delta": params.delta,
        },
    }
    if not puncture:
        rep = solve(base, stencil, params, f=f_const, tol=tol)
        bound = rep.mp_bound_rhs + 10.0 * h
        report.update(
            {
                "mode": "plain_mp",
                "interior_max": rep.interior_max,
                "boundary_max": rep.boundary_max,
                "mp_bound_rhs": rep.mp_bound_rhs,
                "bound_ok": rep.interior_max <= bound,
                "converged": rep.converged,
            }
        )
        return report

    astar = alpha_star(params.lam, params.Lam, params.p)
    alpha = 0.0
    _, k_const = rho_and_K(params.lam, params.Lam, params.p, alpha, params.b)
    if astar < alpha:
        raise ParameterError("potential penalty needs alpha <= alpha*")

    target = (delta * math.cos(e_angle), delta * math.sin(e_angle))
    e_flat = base.nearest_node(*target, kind=2)
    e_ij = base.lattice_coords(e_flat)
    e_xy = base.node_xy(e_flat)

    # Raw solve: the spike is active boundary data (for contrast only).
    def g_spiked(x, y):
        if (x, y) == e_xy:
            return g(x, y) + spike
        return g(x, y)

    raw_grid = Grid2D(Disk(delta), h, stencil, boundary_fn=g_spiked)
    raw = solve(raw_grid, stencil, params, f=f_const, tol=tol)

    # Punctured solve: E is removed from the lattice, its data never read.
    punct = Grid2D(Disk(delta), h, stencil, boundary_fn=g, exclude=[e_ij])
    rep = solve(punct, stencil, params, f=f_const, tol=tol)
    u = rep.field.values

    kernel = KernelParams(alpha=alpha, n=2, d=delta)
    measure = DiscreteMeasure(np.asarray([e_xy]), np.asarray([1.0]))
    live = np.concatenate([punct.interior_flat, punct.boundary_flat])
    xs = punct.xs.reshape(-1)[live]
    ys = punct.ys.reshape(-1)[live]
    dist = np.hypot(xs - e_xy[0], ys - e_xy[1])
    v = np.log(2.0 * delta / dist)
    v_full = np.zeros_like(u)
    v_full[live] = v
    v_int = v_full[punct.interior_flat]
    v_bdy = v_full[punct.boundary_flat]

    c_const = mp_constant(params)
    f_minus = max(-f_const, 0.0)
    use_plus = params.c > 0.0
    boundary_u = u[punct.boundary_flat]
    base_bmax = float(np.max(np.maximum(boundary_u, 0.0))) if use_plus else float(
        boundary_u.max()
    )
    rhs13 = base_bmax + c_const * f_minus
    sup_u = rep.interior_max

    rows = []
    ok_all = True
    for eps in eps_seq:
        w_int = u[punct.interior_flat] - eps * v_int
        w_bdy = boundary_u - eps * v_bdy
        bmax = float(np.max(np.maximum(w_bdy, 0.0))) if use_plus else float(
            w_bdy.max()
        )
        f_eps_minus = max(-(f_const - eps * k_const), 0.0)
        check_rhs = bmax + c_const * f_eps_minus
        sup_w = float(w_int.max())
        check_ok = sup_w <= check_rhs + 1e-9
        bound_u = check_rhs + eps * float(v_int.max())
        slack = bound_u - rhs13
        ok_all &= check_ok
        rows.append(
            {
                "eps": eps,
                "sup_w": sup_w,
                "boundary_max_w": bmax,
                "check_rhs": check_rhs,
                "check_ok": check_ok,
                "bound_on_sup_u": bound_u,
                "slack": slack,
            }
        )
    slacks = [row["slack"] for row in rows]
    monotone = all(s1 > s2 for s1, s2 in zip(slacks, slacks[1:]))
    report.update(
        {
            "mode": "punctured",
            "e_node": {"ij": list(e_ij), "xy": list(e_xy)},
            "K": k_const,
            "C": c_const,
            "raw_interior_max": raw.interior_max,
            "raw_exceeds_rhs13": raw.interior_max > rhs13 + 1e-9,
            "sup_u": sup_u,
            "rhs13": rhs13,
            "per_eps": rows,
            "checks_ok": ok_all,
            "slack_monotone": monotone,
            "final_slack": slacks[-1] if slacks else 0.0,
            "converged": rep.converged and raw.converged,
        }
    )
    return report


def comparison_experiment(
    h=1.0 / 32.0,
    params=None,
    f_sub=-1.0,
    f_super=0.0,
    g_sub="zero",
    g_super="zero",
    width=1,
    tol=1e-10,
):
    """Comparison-principle experiment: the difference of a subsolution-side
    and a supersolution-side solve obeys sup(u - v) <= max_bdry(u - v) +
    C ||(f - g)^-|| up to discretization slack."""
    if params is None:
        params = ModelParams(lam=1.0, Lam=1.0, p=2, delta=1.0)
    stencil = Stencil(width)
    gs = BOUNDARY_FUNCTIONS[g_sub] if isinstance(g_sub, str) else g_sub
    gv = BOUNDARY_FUNCTIONS[g_super] if isinstance(g_super, str) else g_super
    grid_u = Grid2D(Disk(params.delta), h, stencil, boundary_fn=gs)
    grid_v = Grid2D(Disk(params.delta), h, stencil, boundary_fn=gv)
    rep_u = solve(grid_u, stencil, params, f=f_sub, tol=tol)
    rep_v = solve(grid_v, stencil, params, f=f_super, tol=tol)
    diff_int = rep_u.field.interior_values() - rep_v.field.interior_values()
    diff_bdy = rep_u.field.boundary_values() - rep_v.field.boundary_values()
    c_const = mp_constant(params)
    rhs = float(diff_bdy.max()) + c_const * max(-(f_sub - f_super), 0.0)
    sup_diff = float(diff_int.max())
    return {
        "h": h,
        "sup_diff": sup_diff,
        "rhs": rhs,
        "bound_ok": sup_diff <= rhs + 10.0 * h,
        "converged": rep_u.converged and rep_v.converged,
    }


def removability_experiment(
    params=None,
    h=1.0 / 32.0,
    radii=(0.2, 0.1, 0.05, 0.025),
    boundary="x",
    f_const=0.0,
    width=1,
    probe_radius=0.55,
    tol=1e-9,
):
    """Annulus-shrinking removability benchmark around a point singularity.

    Requires alpha* >= 0 (for n = 2 this forces p = 2, lam = Lam); the
    point has zero alpha*-capacity. A reference disk solve provides the
    frozen inner datum (its value at the origin node); each annulus is
    solved with that constant on the inner band and the probe error
    against the disk solve must decrease as the hole shrinks.
    """
    if params is None:
        params = ModelParams(lam=1.0, Lam=1.0, p=2, delta=1.0)
    astar = alpha_star(params.lam, params.Lam, params.p)
    if astar < 0.0:
        raise ParameterError(
            "alpha* < 0: removability out of the theorem hypotheses "
            "(n = 2 exercises alpha* = 0 only, i.e. p = 2 with lam = Lam)"
        )
    g = BOUNDARY_FUNCTIONS[boundary] if isinstance(boundary, str) else boundary
    stencil = Stencil(width)
    delta = params.delta
    disk_grid = Grid2D(Disk(delta), h, stencil, boundary_fn=g)
    disk_rep = solve(disk_grid, stencil, params, f=f_const, tol=tol)
    origin = disk_grid.nearest_node(0.0, 0.0, kind=1)
    frozen = disk_rep.field.value_at(origin)

    probes = []
    for k in range(16):
        ang = 2.0 * math.pi * k / 16.0
        flat = disk_grid.nearest_node(
            probe_radius * delta * math.cos(ang),
            probe_radius * delta * math.sin(ang),
            kind=1,
        )
        probes.append(disk_grid.lattice_coords(flat))
    disk_probe_vals = np.asarray(
        [disk_rep.field.value_at(disk_grid.flat_index(i, j)) for i, j in probes]
    )

    errors = []
    for r_in in radii:
        if not (0.0 < r_in < delta):
            raise InputError("inner radius must lie in (0, delta)")
        cut = (r_in + delta) / 2.0

        def inner_data(x, y, _cut=cut):
            if math.hypot(x, y) < _cut:
                return frozen
            return g(x, y)

        ann = Grid2D(Annulus(r_in, delta), h, stencil, boundary_fn=inner_data)
        rep = solve(ann, stencil, params, f=f_const, tol=tol)
        vals = np.asarray(
            [rep.field.value_at(ann.flat_index(i, j)) for i, j in probes]
        )
        errors.append(float(np.max(np.abs(vals - disk_probe_vals))))

    decreasing = all(a > b for a, b in zip(errors, errors[1:]))
    return {
        "h": h,
        "radii": list(radii),
        "probe_errors": errors,
        "decreasing": decreasing,
        "final_error": errors[-1],
        "final_floor": 5.0 * h,
        "final_ok": errors[-1] <= 5.0 * h,
        "frozen_inner_value": frozen,
        "alpha_star": astar,
        "converged": disk_rep.converged,
    }
