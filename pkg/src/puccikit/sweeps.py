"""Randomized property sweeps over the operator algebra.

Each sweep draws batches of symmetric matrices, decomposes them with the
batched Jacobi kernel, and evaluates operator inequalities vectorized from
the eigenvalues (orders p may vary per sample via cumulative partial sums).
Returned violations are max(lhs - rhs, 0) over the batch, so 0 means the
inequality held everywhere.
"""

import numpy as np

from .linalg import eigh_batch
from .operators import (
    Ellipticity,
    grassmannian_inf_estimate,
    grassmannian_sup_estimate,
    maximizing_frame,
    pucci_minus_p,
    pucci_plus_W,
    pucci_plus_p,
    _orthonormalize,
)
from .linalg import SymMat


def random_symmetric(rng, count, n, scale=1.0):
    a = rng.standard_normal((count, n, n)) * scale
    return (a + a.transpose(0, 2, 1)) / 2.0


def _eigs(stack):
    evals, _ = eigh_batch(stack)
    return evals


def _plus(evals, lam, Lam, p):
    """P^+ per sample; lam, Lam, p may be arrays of batch length."""
    pos = np.cumsum(np.maximum(evals, 0.0)[:, ::-1], axis=1)
    neg = np.cumsum(np.maximum(-evals, 0.0)[:, ::-1], axis=1)
    idx = np.asarray(p) - 1
    rows = np.arange(evals.shape[0])
    return Lam * pos[rows, idx] - lam * neg[rows, idx]


def _minus(evals, lam, Lam, p):
    pos = np.cumsum(np.maximum(evals, 0.0), axis=1)
    neg = np.cumsum(np.maximum(-evals, 0.0), axis=1)
    idx = np.asarray(p) - 1
    rows = np.arange(evals.shape[0])
    return lam * pos[rows, idx] - Lam * neg[rows, idx]


def _maxpos(x):
    return float(np.max(np.maximum(x, 0.0), initial=0.0))


def property_sweep(samples, n_values=(2, 3, 4, 5, 6), seed=7):
    """Lemma-style operator properties over random matrices.

    Returns per-property max violation (scaled by max(1, ||X||) per sample)
    across `samples` matrices split over the dimensions in n_values.
    """
    rng = np.random.default_rng(seed)
    per_n = max(1, samples // len(n_values))
    worst = {
        "duality": 0.0,
        "positive_homogeneity": 0.0,
        "subadditivity_upper": 0.0,
        "subadditivity_lower": 0.0,
        "superadditivity_lower": 0.0,
        "superadditivity_upper": 0.0,
        "interval_monotonicity": 0.0,
        "degenerate_ellipticity": 0.0,
    }
    total = 0
    for n in n_values:
        x = random_symmetric(rng, per_n, n)
        y = random_symmetric(rng, per_n, n)
        g = rng.standard_normal((per_n, n, n)) * 0.5
        psd = np.einsum("bij,bkj->bik", g, g)
        psd = (psd + psd.transpose(0, 2, 1)) / 2.0
        lam = rng.uniform(0.2, 1.0, per_n)
        lam_gap = rng.uniform(0.0, 2.0, per_n)
        big = lam + lam_gap
        lam_wide = lam * rng.uniform(0.2, 1.0, per_n)
        big_wide = big + rng.uniform(0.0, 2.0, per_n)
        p = rng.integers(1, n + 1, per_n)
        cpos = rng.uniform(0.0, 3.0, per_n)

        ev_x = _eigs(x)
        ev_y = _eigs(y)
        ev_xy = _eigs(x + y)
        ev_neg = _eigs(-x)
        ev_cx = _eigs(cpos[:, None, None] * x)
        ev_xp = _eigs(x + psd)

        scale = np.maximum(1.0, np.max(np.abs(x), axis=(1, 2)))
        pp_x = _plus(ev_x, lam, big, p)
        pm_x = _minus(ev_x, lam, big, p)
        pp_y = _plus(ev_y, lam, big, p)
        pm_y = _minus(ev_y, lam, big, p)
        pp_xy = _plus(ev_xy, lam, big, p)
        pm_xy = _minus(ev_xy, lam, big, p)

        worst["duality"] = max(
            worst["duality"],
            float(np.max(np.abs(pm_x + _plus(ev_neg, lam, big, p)) / scale)),
        )
        hom = np.abs(_plus(ev_cx, lam, big, p) - cpos * pp_x) + np.abs(
            _minus(ev_cx, lam, big, p) - cpos * pm_x
        )
        worst["positive_homogeneity"] = max(
            worst["positive_homogeneity"],
            float(np.max(hom / (np.maximum(1.0, cpos) * scale))),
        )
        worst["subadditivity_upper"] = max(
            worst["subadditivity_upper"], _maxpos((pp_xy - (pp_x + pp_y)) / scale)
        )
        worst["subadditivity_lower"] = max(
            worst["subadditivity_lower"], _maxpos(((pp_x + pm_y) - pp_xy) / scale)
        )
        worst["superadditivity_lower"] = max(
            worst["superadditivity_lower"], _maxpos(((pm_x + pm_y) - pm_xy) / scale)
        )
        worst["superadditivity_upper"] = max(
            worst["superadditivity_upper"], _maxpos((pm_xy - (pp_x + pm_y)) / scale)
        )
        mono = np.maximum.reduce(
            [
                _minus(ev_x, lam_wide, big_wide, p) - pm_x,
                pm_x - pp_x,
                pp_x - _plus(ev_x, lam_wide, big_wide, p),
            ]
        )
        worst["interval_monotonicity"] = max(
            worst["interval_monotonicity"], _maxpos(mono / scale)
        )
        degen = np.maximum(
            pp_x - _plus(ev_xp, lam, big, p), pm_x - _minus(ev_xp, lam, big, p)
        )
        worst["degenerate_ellipticity"] = max(
            worst["degenerate_ellipticity"], _maxpos(degen / scale)
        )
        total += per_n
    worst["samples"] = total
    return worst


def inclusions_sweep(samples, n=4, p_values=(1, 2, 3), seed=11):
    """Randomized check of the (n/p)-scaled inclusion chain."""
    rng = np.random.default_rng(seed)
    x = random_symmetric(rng, samples, n)
    evals = _eigs(x)
    lam = rng.uniform(0.2, 1.0, samples)
    big = lam + rng.uniform(0.0, 2.0, samples)
    scale = np.maximum(1.0, np.max(np.abs(x), axis=(1, 2)))
    worst = 0.0
    n_arr = np.full(samples, n)
    for p in p_values:
        ratio = n / p
        p_arr = np.full(samples, p)
        lo = _minus(evals, ratio * lam, ratio * big, p_arr)
        mm = _minus(evals, lam, big, n_arr)
        mp = _plus(evals, lam, big, n_arr)
        hi = _plus(evals, ratio * lam, ratio * big, p_arr)
        v = np.maximum.reduce([lo - mm, mm - mp, mp - hi])
        worst = max(worst, _maxpos(v / scale))
    return {"samples": samples, "p_values": list(p_values), "max_violation": worst}


def representation_sweep(matrices, frames_per_matrix, seed=23, n_values=(2, 3, 4, 5, 6)):
    """Attainment of the order-p supremum by the top-eigenvector frame and
    the no-overshoot property of sampled frames."""
    rng = np.random.default_rng(seed)
    worst_attain = 0.0
    worst_overshoot = 0.0
    for _ in range(matrices):
        n = int(rng.choice(n_values))
        p = int(rng.integers(1, n + 1))
        x = random_symmetric(rng, 1, n)[0]
        lam = float(rng.uniform(0.2, 1.0))
        big = lam + float(rng.uniform(0.0, 2.0))
        ell = Ellipticity(lam, big, p)
        xm = SymMat.from_dense(x)
        scale = max(1.0, xm.max_abs())
        target = pucci_plus_p(xm, ell)
        attained = pucci_plus_W(xm, maximizing_frame(xm, p), ell)
        worst_attain = max(worst_attain, abs(attained - target) / scale)

        frames = _orthonormalize(rng.standard_normal((frames_per_matrix, n, p)))
        comp = np.einsum("sip,ij,sjq->spq", frames, x, frames)
        comp = (comp + comp.transpose(0, 2, 1)) / 2.0
        evals = _eigs(comp)
        vals = big * np.maximum(evals, 0.0).sum(axis=1) - lam * np.maximum(
            -evals, 0.0
        ).sum(axis=1)
        worst_overshoot = max(
            worst_overshoot, _maxpos((vals - target) / scale)
        )
    return {
        "matrices": matrices,
        "frames_per_matrix": frames_per_matrix,
        "max_attainment_error": worst_attain,
        "max_overshoot": worst_overshoot,
    }


def inf_sign_resolution(samples=20000, seed=5):
    """Resolve the minimal-operator display discrepancy by sampling.

    On X = diag(-1, 1) with lam = 1, Lam = 2, p = 1 the duality-consistent
    formula gives -2 and the displayed variant -1; the sampled infimum of
    P^-_W decides between them.
    """
    xm = SymMat.from_diag([-1.0, 1.0])
    ell = Ellipticity(1.0, 2.0, 1)
    consistent = pucci_minus_p(xm, ell)
    displayed = ell.Lam * 0.0 - ell.lam * 1.0  # Lam e1+ - lam e1- on diag(-1,1)
    sampled = grassmannian_inf_estimate(xm, ell, samples, seed)
    return {
        "consistent_value": consistent,
        "displayed_value": displayed,
        "sampled_inf": sampled,
        "sampled_below_displayed_margin": displayed - sampled,
        "matches_consistent": abs(sampled - consistent)
        < abs(sampled - displayed),
        "no_undershoot": sampled >= consistent - 1e-9,
    }
