"""Radial profiles, fundamental solutions, counterexample and barriers."""

import math

import numpy as np
import pytest

from puccikit.radial import (
    KinkError,
    ModelParams,
    ParameterError,
    RadialProfile,
    alpha_star,
    barrier_c_value,
    barrier_value_and_residual,
    counterexample_check,
    fundamental_residual,
    mp_constant,
    mp_constant_detail,
    radial_hessian_spectrum,
)


def central_diff(f, r, h=1e-4):
    # h balances truncation against cancellation for the profile catalog
    return (f(r + h) - 2.0 * f(r) + f(r - h)) / (h * h)


class TestProfiles:
    def test_sine_cap_spectrum(self):
        eps = math.pi / 8.0
        profile = RadialProfile("sine_cap", 3, eps=eps)
        r = math.pi / 2.0 - eps / 4.0  # inside the smooth sine piece
        e_rad, e_tan, mult = radial_hessian_spectrum(profile, r)
        assert abs(e_rad + math.sin(r)) <= 1e-14
        assert abs(e_tan - math.cos(r) / r) <= 1e-14
        assert mult == 2

    def test_quadratic_barrier_spectrum(self):
        profile = RadialProfile("quadratic_barrier", 4, gamma=0.75)
        e_rad, e_tan, mult = radial_hessian_spectrum(profile, 1.3)
        assert e_rad == -1.5 and e_tan == -1.5 and mult == 3

    def test_power_derivatives(self):
        profile = RadialProfile("power", 3, alpha=1.0)
        e_rad, e_tan, _ = radial_hessian_spectrum(profile, 1.0)
        assert abs(e_rad - 2.0) <= 1e-12
        assert abs(e_tan + 1.0) <= 1e-12

    def test_finite_difference_agreement(self):
        profiles = [
            RadialProfile("power", 3, alpha=1.7),
            RadialProfile("log", 2, R=5.0),
            RadialProfile("quadratic_barrier", 3, gamma=0.3, offset=2.0),
            RadialProfile("sine_cap", 3, eps=math.pi / 8.0),
        ]
        radii = [0.4, 0.9, 1.6]
        for profile in profiles:
            for r in radii:
                if profile.kind == "sine_cap":
                    r = math.pi / 2.0 + (r - 0.9) * 0.1  # keep in sine piece
                g2 = profile.g2(r)
                scale = max(1.0, abs(g2), abs(profile.g(r)))
                assert abs(g2 - central_diff(profile.g, r)) <= 1e-6 * scale
                d1 = (profile.g(r + 1e-6) - profile.g(r - 1e-6)) / 2e-6
                assert abs(profile.g1(r) - d1) <= 1e-6 * scale

    def test_kink_guarded(self):
        profile = RadialProfile("sine_cap", 2, eps=math.pi / 8.0)
        with pytest.raises(KinkError):
            profile.g2(profile.glue_radius)

    def test_glue_convex_corner(self):
        profile = RadialProfile("sine_cap", 2, eps=math.pi / 8.0)
        chk = profile.glue_check()
        assert abs(chk["value_jump"]) <= 1e-15
        # outward derivative jump is +sin(eps/2): the convex direction
        assert abs(chk["g1_jump"] - math.sin(math.pi / 16.0)) <= 1e-15
        assert chk["convex_corner"]

    def test_eps_range(self):
        with pytest.raises(ParameterError):
            RadialProfile("sine_cap", 2, eps=math.pi / 4.0)


class TestAlphaStar:
    def test_values(self):
        assert alpha_star(1.0, 1.0, 2) == 0.0
        assert alpha_star(1.0, 1.0, 3) == 1.0
        assert alpha_star(1.0, 2.0, 5) == 1.0
        assert alpha_star(1.0, 2.0, 1) == -1.0  # negative allowed


class TestFundamental:
    def test_power_case(self):
        params = ModelParams(lam=1.0, Lam=1.0, p=3, delta=1.0)
        assert abs(fundamental_residual(params, 2.0, 3)) <= 1e-10 * 2.0**-3

    def test_log_case(self):
        params = ModelParams(lam=1.0, Lam=1.0, p=2, delta=1.0)
        for r in (0.2, 1.0, 5.0):
            assert abs(fundamental_residual(params, r, 2, R=10.0)) <= 1e-10 * r**-2

    def test_subcritical_strictly_negative(self):
        params = ModelParams(lam=1.0, Lam=1.0, p=4, delta=1.0)
        res = fundamental_residual(params, 1.5, 4, alpha=1.5)  # alpha* = 2
        assert res < 0.0

    def test_inadmissible(self):
        params = ModelParams(lam=1.0, Lam=2.0, p=2, delta=1.0)  # alpha* < 0
        with pytest.raises(ParameterError):
            fundamental_residual(params, 1.0, 2)


class TestCounterexample:
    def test_at_pi_over_2(self):
        rep = counterexample_check(math.pi / 8.0, 1.0, 2.0, 1, 2, math.pi / 2.0)
        assert abs(rep["quantity"]) <= 1e-12
        assert rep["subsolution_ok"]

    def test_boundary_vs_interior(self):
        rep = counterexample_check(math.pi / 8.0, 1.0, 1.0, 1, 2, math.pi / 2.0)
        assert rep["interior_max"] == 1.0
        assert abs(rep["boundary_max"] - math.cos(math.pi / 16.0)) <= 1e-15
        assert rep["violation_margin"] >= 0.019

    def test_bdelta_ratio(self):
        eps = math.pi / 8.0
        rep = counterexample_check(eps, 1.0, 1.0, 1, 2, math.pi / 2.0)
        delta = math.pi / 2.0 + eps / 2.0
        assert abs(rep["bdelta_over_lam_p"] - delta / (delta - eps)) <= 1e-14
        assert rep["bdelta_over_lam_p"] > 1.0

    def test_chain_holds_on_annulus(self):
        eps = math.pi / 12.0
        r0 = math.pi / 2.0 - eps / 2.0
        for r in np.linspace(r0 + 1e-6, math.pi / 2.0 + eps / 2.0, 200):
            rep = counterexample_check(eps, 1.0, 2.0, 2, 4, float(r))
            assert rep["quantity"] >= rep["chain_lower_bound"] - 1e-12
            assert rep["quantity"] >= -1e-12

    def test_twenty_eps_thousand_radii(self):
        eps_values = np.linspace(0.02, math.pi / 6.0 - 0.02, 20)
        radii = np.linspace(0.0, 1.0, 1000)
        for eps in eps_values:
            r0 = math.pi / 2.0 - eps / 2.0
            r1 = math.pi / 2.0 + eps / 2.0
            for t in radii:
                r = r0 + 1e-9 + float(t) * (r1 - r0 - 1e-9)
                rep = counterexample_check(eps, 1.0, 1.5, 1, 3, r)
                assert rep["quantity"] >= -1e-12

    def test_narrow_domain_remark(self):
        # shell volume shrinks with eps while the violation margin persists
        ratios, margins = [], []
        for eps in (0.5, 0.25, 0.125, 0.0625):
            rep = counterexample_check(eps, 1.0, 1.0, 1, 2, math.pi / 2.0)
            ratios.append(rep["shell_volume_ratio"])
            margins.append(rep["violation_margin"])
        assert all(a > b for a, b in zip(ratios, ratios[1:]))
        assert all(m > 0.0 for m in margins)

    def test_eps_out_of_range(self):
        with pytest.raises(ParameterError):
            counterexample_check(math.pi / 4.0, 1.0, 1.0, 1, 2, math.pi / 2.0)


class TestBarriers:
    def test_b_zero_exact(self):
        params = ModelParams(lam=1.0, Lam=1.0, p=2, delta=1.0, f_minus_norm=2.0)
        for r in (0.0, 0.4, 1.0):
            _, res = barrier_value_and_residual(params, r, 0.0)
            assert abs(res) <= 1e-14

    def test_zero_rhs(self):
        params = ModelParams(lam=1.0, Lam=1.0, p=2, delta=1.0)
        value, res = barrier_value_and_residual(params, 0.5, 3.0)
        assert value == 3.0 and res <= 0.0

    def test_spec_example(self):
        params = ModelParams(lam=1.0, Lam=1.0, p=2, delta=1.0, b=1.0,
                             f_minus_norm=2.0)
        _, res_at_delta = barrier_value_and_residual(params, 1.0, 0.0)
        assert abs(res_at_delta) <= 1e-14
        for r in (0.0, 0.3, 0.9):
            _, res = barrier_value_and_residual(params, r, 0.0)
            assert res < 0.0

    def test_c_barrier_limit(self):
        params = ModelParams(lam=1.0, Lam=1.0, p=2, delta=1.0, b=0.0, c=1.0,
                             f_minus_norm=1.0)
        c_large, _ = mp_constant_detail(params, eps_hat=1e9)
        assert abs(c_large - 1.0 / params.c) <= 1e-6

    def test_c_barrier_zero_f(self):
        params = ModelParams(lam=1.0, Lam=1.0, p=2, delta=1.0, c=2.0)
        _, res = barrier_c_value(params, 1.0, 0.5, 1.5)
        assert abs(res + 2.0 * 1.5) <= 1e-14

    def test_c_barrier_numeric(self):
        params = ModelParams(lam=1.0, Lam=1.0, p=1, delta=1.0, b=2.0, c=1.0,
                             f_minus_norm=1.0)
        for r in np.linspace(0.0, 1.0, 50):
            _, res = barrier_c_value(params, 1.0, float(r), 0.0)
            assert res <= 1e-12


class TestMPConstant:
    def test_c0_values(self):
        assert mp_constant(ModelParams(lam=1, Lam=1, p=2, delta=1)) == 0.25
        assert mp_constant(ModelParams(lam=1, Lam=1, p=2, delta=1, b=1)) == 0.5

    def test_c_positive_example(self):
        params = ModelParams(lam=1, Lam=1, p=1, delta=1, b=2, c=1)
        assert mp_constant(params, eps_hat=1.0) == 4.0

    def test_c_positive_minimizer(self):
        params = ModelParams(lam=1, Lam=1, p=1, delta=1, b=2, c=1)
        c_best, eps_best = mp_constant_detail(params)
        assert eps_best > 0.0
        assert c_best <= mp_constant(params, eps_hat=1.0) + 1e-12
        assert c_best <= mp_constant(params, eps_hat=0.1) + 1e-12

    def test_threshold_rejected(self):
        with pytest.raises(ParameterError):
            mp_constant(ModelParams(lam=1, Lam=1, p=2, delta=1, b=2))
