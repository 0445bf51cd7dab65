"""Equilibrium-measure optimization and capacity values.

The discrete energy is E(w) = sum_{i != j} w_i w_j Phi(|y_i - y_j|) +
sum_i w_i^2 s_i over the probability simplex, with self-energies
s_i = Phi(h_i) at the local regularization spacing h_i. Minimized by
Frank-Wolfe: the linear subproblem picks the coordinate with the smallest
gradient; steps use exact line search (the energy is quadratic), falling
back to the full step when the directional curvature is non-positive, so
the energy is non-increasing and the duality gap certifies optimality.
"""

import math
from dataclasses import dataclass

import numpy as np

from ..linalg import InputError
from .measures import DiscreteMeasure


@dataclass(frozen=True)
class EquilibriumResult:
    measure: DiscreteMeasure
    value: float
    gap: float
    iterations: int
    converged: bool
    energy_trace: tuple


def energy_matrix(atoms, spacings, k):
    """Kernel matrix with regularized self-energies on the diagonal."""
    atoms = np.asarray(atoms, dtype=np.float64)
    if len(atoms) == 1:
        return np.asarray([[k.value_r(float(spacings[0]))]])
    diff = atoms[:, None, :] - atoms[None, :, :]
    dist = np.sqrt((diff * diff).sum(axis=-1))
    np.fill_diagonal(dist, 1.0)
    q = k.value_r_many(dist)
    np.einsum("ii->i", q)[:] = k.value_r_many(np.asarray(spacings))
    return q


def equilibrium_measure(set_spec, k, iterations=5000, tol=1e-9):
    """Minimize the discrete energy; returns (measure, V_est, result).

    Away steps (the coordinate with the largest gradient on the support)
    are taken when they descend faster than the Frank-Wolfe step; the
    reported gap is always the Frank-Wolfe duality gap. V_est is the final
    energy E(w*); `result.converged` is False when the gap is still above
    tol after the iteration budget (the gap is attached either way).
    """
    set_spec.check_inside(k.d)
    atoms, spacings = set_spec.generate()
    q = energy_matrix(atoms, spacings, k)
    n = len(atoms)
    w = np.full(n, 1.0 / n)
    qw = q @ w
    energy = float(w @ qw)
    trace = [energy]
    gap = math.inf
    it = 0
    for it in range(1, iterations + 1):
        grad = 2.0 * qw
        gw = float(grad @ w)
        j = int(np.argmin(grad))
        gap = gw - float(grad[j])
        if gap <= tol:
            break
        grad_masked = np.where(w > 0.0, grad, -np.inf)
        a = int(np.argmax(grad_masked))
        away_drv = gw - float(grad[a])  # <grad, w - e_a> <= 0
        if -gap <= away_drv or w[a] >= 1.0:
            d = -w.copy()
            d[j] += 1.0
            qd = q[:, j] - qw
            lin = -gap
            step_max = 1.0
        else:
            d = w.copy()
            d[a] -= 1.0
            qd = qw - q[:, a]
            lin = away_drv
            step_max = w[a] / (1.0 - w[a])
        curv = float(d @ qd)
        if curv > 0.0:
            step = min(step_max, -lin / (2.0 * curv))
        else:
            step = step_max
        w = w + step * d
        w = np.maximum(w, 0.0)
        w /= w.sum()
        qw = q @ w
        energy = float(w @ qw)
        trace.append(energy)
    measure = DiscreteMeasure(atoms, w)
    converged = gap <= tol
    result = EquilibriumResult(
        measure=measure,
        value=energy,
        gap=gap,
        iterations=it,
        converged=converged,
        energy_trace=tuple(trace),
    )
    return measure, energy, result


def capacity_from_value(v, alpha):
    """Capacity from the equilibrium value: 1/V for alpha > 0, e^-V at 0."""
    if alpha > 0.0:
        if v <= 0.0:
            raise InputError("equilibrium value must be positive for alpha > 0")
        return 1.0 / v
    return math.exp(-v)


def refinement_values(make_spec, k, resolutions, iterations=5000, tol=1e-9):
    """V_est across resolutions; make_spec(N) builds the SetSpec."""
    values = []
    for n_res in resolutions:
        _, v_est, _ = equilibrium_measure(
            make_spec(n_res), k, iterations=iterations, tol=tol
        )
        values.append(v_est)
    return values


def inner_capacity(compact_caps):
    """Sup of capacities over a finite family of compact subsets."""
    caps = list(compact_caps)
    if not caps:
        raise InputError("need at least one compact subset")
    return max(caps)


def outer_capacity(open_caps):
    """Inf of (inner) capacities over a finite family of open covers."""
    caps = list(open_caps)
    if not caps:
        raise InputError("need at least one open cover")
    return min(caps)
