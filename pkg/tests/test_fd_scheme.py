"""Discrete operator building blocks: exactness, consistency, monotonicity."""

import math

import numpy as np
import pytest

from puccikit.linalg import InputError, SymMat
from puccikit.operators import Ellipticity, pucci_plus_p
from puccikit.fd import (
    Disk,
    Grid2D,
    GridField,
    Rectangle,
    Stencil,
    directional_second_diff,
    discrete_gradient_norm,
    discrete_pucci_plus,
)
from puccikit.fd.scheme import operator_value, quadratic_field
from puccikit.radial import ModelParams


def make_field(grid, values):
    return GridField(grid, np.asarray(values, dtype=float))


def center_node(grid):
    return grid.nearest_node(0.0, 0.0, kind=1)


class TestSecondDiff:
    def test_quadratic_exactness(self):
        st = Stencil(3)
        grid = Grid2D(Disk(1.0), 1.0 / 16.0, st)
        a11, a12, a22 = 1.3, -0.4, 0.7
        field = make_field(grid, quadratic_field(grid, a11, a12, a22))
        node = center_node(grid)
        amat = np.array([[a11, a12], [a12, a22]])
        for arm in st.arms:
            v = np.asarray(arm, dtype=float)
            vhat = v / np.linalg.norm(v)
            want = float(vhat @ amat @ vhat)
            got = directional_second_diff(field, node, arm)
            assert abs(got - want) <= 1e-10

    def test_constant(self):
        st = Stencil(2)
        grid = Grid2D(Disk(1.0), 1.0 / 8.0, st)
        field = make_field(grid, np.full(grid.nx * grid.ny, 3.25))
        node = center_node(grid)
        for arm in st.arms:
            assert directional_second_diff(field, node, arm) == 0.0

    def test_richardson_slope_on_quartic(self):
        st = Stencil(1)
        errors = []
        hs = [1.0 / 8.0, 1.0 / 16.0, 1.0 / 32.0, 1.0 / 64.0]
        for h in hs:
            grid = Grid2D(Rectangle(-1.0, 1.0, -1.0, 1.0), h, st)
            xs = grid.xs.reshape(-1)
            ys = grid.ys.reshape(-1)
            vals = xs**4 + ys**4 + xs**2 * ys**2
            field = make_field(grid, vals)
            node = grid.nearest_node(0.31, 0.22, kind=1)
            x, y = grid.node_xy(node)
            want = 12.0 * x * x + 2.0 * y * y  # d^2/dx^2 of the quartic
            got = directional_second_diff(field, node, (1, 0))
            errors.append(abs(got - want))
        slopes = [
            math.log2(errors[i] / errors[i + 1]) for i in range(len(errors) - 1)
        ]
        assert min(slopes) >= 1.9

    def test_outside_endpoint_rejected(self):
        st = Stencil(1)
        grid = Grid2D(Disk(0.5), 1.0 / 8.0, st)
        field = make_field(grid, grid.values)
        boundary_node = int(grid.boundary_flat[0])
        with pytest.raises(InputError):
            # boundary nodes have no guaranteed stencil closure
            for arm in st.arms:
                directional_second_diff(field, boundary_node, arm)


class TestDiscretePucci:
    def test_axis_hessian_p1(self):
        st = Stencil(1)
        grid = Grid2D(Disk(1.0), 1.0 / 16.0, st)
        field = make_field(grid, quadratic_field(grid, 1.0, 0.0, -1.0))
        val = discrete_pucci_plus(
            field, center_node(grid), Ellipticity(1.0, 1.0, 1), st
        )
        assert abs(val - 1.0) <= 1e-10

    def test_axis_hessian_p2_trace(self):
        st = Stencil(1)
        grid = Grid2D(Disk(1.0), 1.0 / 16.0, st)
        field = make_field(grid, quadratic_field(grid, 1.0, 0.0, -1.0))
        val = discrete_pucci_plus(
            field, center_node(grid), Ellipticity(1.0, 1.0, 2), st
        )
        assert abs(val) <= 1e-10

    def test_rotated_hessian_consistency(self):
        # angular resolution controls the error against the exact operator
        st = Stencil(3)
        grid = Grid2D(Disk(1.0), 1.0 / 16.0, st)
        gap = st.max_angular_gap()
        measured = 0.0
        for angle in np.linspace(0.0, math.pi, 17):
            c, s = math.cos(angle), math.sin(angle)
            rot = np.array([[c, -s], [s, c]])
            amat = rot @ np.diag([2.0, -1.0]) @ rot.T
            field = make_field(
                grid, quadratic_field(grid, amat[0, 0], amat[0, 1], amat[1, 1])
            )
            for p in (1, 2):
                ell = Ellipticity(1.0, 2.0, p)
                got = discrete_pucci_plus(field, center_node(grid), ell, st)
                want = pucci_plus_p(SymMat.from_dense(amat), ell)
                spread = 3.0  # e_max - e_min of the test Hessian
                bound = ell.Lam * p * spread * math.sin(gap / 2.0) ** 2 + 1e-9
                assert got <= want + 1e-10
                assert want - got <= bound
                measured = max(measured, (want - got) / (gap * spread))
        print(f"\nconsistency constant (error / (dtheta * spread)): "
              f"{measured:.4f}")

    def test_monotone_in_offnode_values(self):
        rng = np.random.default_rng(8)
        st = Stencil(2)
        grid = Grid2D(Disk(1.0), 1.0 / 8.0, st)
        params = ModelParams(lam=0.8, Lam=1.7, p=2, delta=1.0, b=0.6, c=0.4)
        node = center_node(grid)
        neighbor_ids = set()
        for dx, dy in st.full_arms:
            neighbor_ids.add(node + dx * grid.ny + dy)
        for _ in range(60):
            base = rng.standard_normal(grid.nx * grid.ny)
            field = make_field(grid, base.copy())
            before = operator_value(field, node, params, st)
            target = int(rng.choice(sorted(neighbor_ids)))
            bumped = base.copy()
            bumped[target] += float(rng.uniform(0.0, 2.0))
            after = operator_value(make_field(grid, bumped), node, params, st)
            assert after >= before - 1e-12


class TestGradientNorm:
    def test_linear_axis_arms(self):
        st = Stencil(1)
        grid = Grid2D(Disk(1.0), 1.0 / 16.0, st)
        gvec = (0.3, -0.8)
        field = make_field(
            grid, quadratic_field(grid, 0.0, 0.0, 0.0, lin=gvec)
        )
        got = discrete_gradient_norm(field, center_node(grid), st)
        assert abs(got - max(abs(g) for g in gvec)) <= 1e-12

    def test_linear_rich_arms(self):
        st = Stencil(4)
        grid = Grid2D(Disk(1.0), 1.0 / 16.0, st)
        gvec = (0.3, -0.8)
        field = make_field(grid, quadratic_field(grid, 0.0, 0.0, 0.0, lin=gvec))
        got = discrete_gradient_norm(field, center_node(grid), st)
        norm = math.hypot(*gvec)
        gap = st.max_angular_gap()
        assert got <= norm + 1e-12
        assert norm - got <= norm * (1.0 - math.cos(gap / 2.0)) + 1e-12

    def test_constant(self):
        st = Stencil(2)
        grid = Grid2D(Disk(1.0), 1.0 / 8.0, st)
        field = make_field(grid, np.full(grid.nx * grid.ny, 1.5))
        assert discrete_gradient_norm(field, center_node(grid), st) == 0.0

    def test_cone_sample(self):
        st = Stencil(3)
        h = 1.0 / 32.0
        grid = Grid2D(Disk(1.0), h, st)
        xs = grid.xs.reshape(-1)
        ys = grid.ys.reshape(-1)
        field = make_field(grid, np.hypot(xs, ys))
        node = grid.nearest_node(0.4, 0.3, kind=1)
        got = discrete_gradient_norm(field, node, st)
        gap = st.max_angular_gap()
        assert abs(got - 1.0) <= 4.0 * (h + gap)
