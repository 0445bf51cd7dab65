"""Property-based checks of the operator inequalities."""

import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from puccikit import (
    Ellipticity,
    SymMat,
    pucci_minus_W,
    pucci_minus_p,
    pucci_plus_W,
    pucci_plus_p,
    sample_frame,
)

SETTINGS = settings(max_examples=80, deadline=None)


def sym_matrices(n):
    return arrays(
        np.float64,
        (n, n),
        elements=st.floats(min_value=-5.0, max_value=5.0),
    ).map(lambda a: SymMat.from_dense((a + a.T) / 2.0))


def ellipticities(n):
    return st.tuples(
        st.floats(min_value=0.1, max_value=2.0),
        st.floats(min_value=0.0, max_value=3.0),
        st.integers(min_value=1, max_value=n),
    ).map(lambda t: Ellipticity(t[0], t[0] + t[1], t[2]))


def scale(*mats):
    return max(1.0, *(m.max_abs() for m in mats))


@SETTINGS
@given(x=sym_matrices(3), ell=ellipticities(3))
def test_duality(x, ell):
    assert abs(pucci_minus_p(x, ell) + pucci_plus_p(-1.0 * x, ell)) <= 1e-12 * scale(x)


@SETTINGS
@given(x=sym_matrices(3), ell=ellipticities(3),
       c=st.floats(min_value=0.0, max_value=10.0))
def test_positive_homogeneity(x, ell, c):
    tol = 1e-10 * max(1.0, c) * scale(x)
    assert abs(pucci_plus_p(c * x, ell) - c * pucci_plus_p(x, ell)) <= tol
    assert abs(pucci_minus_p(c * x, ell) - c * pucci_minus_p(x, ell)) <= tol


@SETTINGS
@given(x=sym_matrices(4), y=sym_matrices(4), ell=ellipticities(4))
def test_subadditivity_chain(x, y, ell):
    tol = 1e-9 * scale(x, y)
    pxy = pucci_plus_p(x + y, ell)
    assert pucci_plus_p(x, ell) + pucci_minus_p(y, ell) <= pxy + tol
    assert pxy <= pucci_plus_p(x, ell) + pucci_plus_p(y, ell) + tol


@SETTINGS
@given(x=sym_matrices(4), y=sym_matrices(4), ell=ellipticities(4))
def test_superadditivity_chain(x, y, ell):
    tol = 1e-9 * scale(x, y)
    mxy = pucci_minus_p(x + y, ell)
    assert pucci_minus_p(x, ell) + pucci_minus_p(y, ell) <= mxy + tol
    assert mxy <= pucci_plus_p(x, ell) + pucci_minus_p(y, ell) + tol


@SETTINGS
@given(x=sym_matrices(3), ell=ellipticities(3),
       lo=st.floats(min_value=0.1, max_value=1.0),
       hi=st.floats(min_value=0.0, max_value=3.0))
def test_interval_monotonicity(x, ell, lo, hi):
    wide = Ellipticity(ell.lam * lo, ell.Lam + hi, ell.p)
    tol = 1e-10 * scale(x)
    assert pucci_minus_p(x, wide) <= pucci_minus_p(x, ell) + tol
    assert pucci_minus_p(x, ell) <= pucci_plus_p(x, ell) + tol
    assert pucci_plus_p(x, ell) <= pucci_plus_p(x, wide) + tol


@SETTINGS
@given(x=sym_matrices(3), g=arrays(np.float64, (3, 3),
       elements=st.floats(min_value=-2.0, max_value=2.0)),
       ell=ellipticities(3))
def test_degenerate_ellipticity(x, g, ell):
    p = SymMat.from_dense((g @ g.T + (g @ g.T).T) / 2.0)
    tol = 1e-10 * scale(x, p)
    assert pucci_plus_p(x + p, ell) >= pucci_plus_p(x, ell) - tol
    assert pucci_minus_p(x + p, ell) >= pucci_minus_p(x, ell) - tol


@SETTINGS
@given(x=sym_matrices(4), y=sym_matrices(4),
       seed=st.integers(min_value=0, max_value=2**16),
       lam=st.floats(min_value=0.1, max_value=2.0),
       gap=st.floats(min_value=0.0, max_value=3.0),
       c=st.floats(min_value=0.0, max_value=5.0))
def test_restricted_operators_same_properties(x, y, seed, lam, gap, c):
    """Fixed W: duality, homogeneity and both additivity chains."""
    rng = np.random.default_rng(seed)
    w = sample_frame(4, 2, rng)
    ell = Ellipticity(lam, lam + gap, 2)
    tol = 1e-9 * scale(x, y) * max(1.0, c)
    assert abs(pucci_minus_W(x, w, ell) + pucci_plus_W(-1.0 * x, w, ell)) <= tol
    assert abs(pucci_plus_W(c * x, w, ell) - c * pucci_plus_W(x, w, ell)) <= tol
    pxy = pucci_plus_W(x + y, w, ell)
    assert pucci_plus_W(x, w, ell) + pucci_minus_W(y, w, ell) <= pxy + tol
    assert pxy <= pucci_plus_W(x, w, ell) + pucci_plus_W(y, w, ell) + tol
    mxy = pucci_minus_W(x + y, w, ell)
    assert pucci_minus_W(x, w, ell) + pucci_minus_W(y, w, ell) <= mxy + tol
    assert mxy <= pucci_plus_W(x, w, ell) + pucci_minus_W(y, w, ell) + tol
