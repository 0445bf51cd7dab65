"""The two kernel lanes must agree bit for bit."""

import numpy as np
import pytest

from puccikit import _kernels_py
from puccikit.fd import Disk, Grid2D, Stencil
from puccikit.fd.solve import rhs_array, time_step
from puccikit.radial import ModelParams

native = pytest.importorskip("puccikit._native")


def test_jacobi_lanes_bitwise_equal():
    rng = np.random.default_rng(0)
    for n in (1, 2, 3, 5, 8):
        mats = rng.standard_normal((64, n, n))
        mats = (mats + mats.transpose(0, 2, 1)) / 2.0
        ev_n, q_n = native.jacobi_eigh_batch(mats)
        ev_p, q_p = _kernels_py.jacobi_eigh_batch(mats)
        assert np.array_equal(ev_n, ev_p)
        assert np.array_equal(q_n, q_p)


def test_jacobi_single_matrix_shape():
    a = np.array([[2.0, 1.0], [1.0, 2.0]])
    ev, q = native.jacobi_eigh_batch(a)
    assert ev.shape == (2,) and q.shape == (2, 2)
    assert np.allclose(ev, [1.0, 3.0], atol=1e-14)


@pytest.mark.parametrize("p,b,c", [(1, 0.0, 0.0), (2, 0.0, 0.0),
                                   (2, 0.7, 0.0), (1, 0.3, 0.5)])
def test_fd_sweep_lanes_bitwise_equal(p, b, c):
    params = ModelParams(lam=0.9, Lam=1.4, p=p, delta=1.0, b=b, c=c)
    stencil = Stencil(3)
    grid = Grid2D(Disk(1.0), 1.0 / 24.0, stencil, boundary_fn=lambda x, y: x)
    tab = grid.build_tables()
    if p == 1:
        tab = dict(tab, pairs=None)
    f_int = rhs_array(grid, -1.0)
    tau = time_step(params, grid.h, stencil.width)
    rng = np.random.default_rng(1)
    u = grid.values.copy()
    u[grid.interior_flat] = rng.standard_normal(grid.interior_flat.size)
    for _ in range(5):
        un, rn, sn = native.fd_sweep(u, f_int, tab, params.lam, params.Lam,
                                     b, c, tau)
        up, rp, sp = _kernels_py.fd_sweep(u, f_int, tab, params.lam,
                                          params.Lam, b, c, tau)
        assert rn == rp
        assert np.array_equal(un, up)
        assert np.array_equal(sn, sp)
        u = un
