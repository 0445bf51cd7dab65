"""Grid experiments: EMP with the potential perturbation, comparison,
removability by annulus shrinking."""

import pytest

from puccikit.fd import (
    comparison_experiment,
    emp_experiment,
    removability_experiment,
)
from puccikit.radial import ModelParams, ParameterError


class TestEmp:
    def test_punctured_harmonic(self):
        rep = emp_experiment(h=1.0 / 32.0)
        assert rep["mode"] == "punctured"
        assert rep["checks_ok"] and rep["slack_monotone"]
        # the raw solve (spike active) violates the E'-only bound,
        # the punctured machinery recovers it in the eps -> 0 limit
        assert rep["raw_exceeds_rhs13"]
        assert rep["sup_u"] <= rep["rhs13"] + 1e-9
        slacks = [row["slack"] for row in rep["per_eps"]]
        assert slacks[0] > slacks[1] > slacks[2] > 0.0
        assert rep["final_slack"] <= 0.05

    def test_empty_e_reduces_to_plain_mp(self):
        rep = emp_experiment(h=1.0 / 32.0, puncture=False, f_const=-1.0)
        assert rep["mode"] == "plain_mp"
        assert rep["bound_ok"]

    def test_c_positive_variant_with_large_b(self):
        # b*delta >= lam*p is allowed when c > 0: the u^+ bound of the
        # c-coercive case holds (E empty; the n = 2 grid has no admissible
        # potential penalty for b > 0).
        params = ModelParams(lam=1.0, Lam=1.0, p=2, delta=1.0, b=3.0, c=1.0)
        rep = emp_experiment(
            h=1.0 / 32.0, params=params, puncture=False, f_const=-1.0,
            boundary="xx_minus_yy",
        )
        assert rep["mode"] == "plain_mp"
        assert rep["bound_ok"]

    def test_b_positive_with_puncture_rejected(self):
        # Prop-5.1 admissibility is empty for n = 2, p <= 2 with b > 0
        params = ModelParams(lam=1.0, Lam=1.0, p=2, delta=1.0, b=0.5)
        with pytest.raises(ParameterError):
            emp_experiment(h=1.0 / 16.0, params=params)

    def test_spike_height_irrelevant_after_puncture(self):
        r1 = emp_experiment(h=1.0 / 16.0, spike=1.0)
        r2 = emp_experiment(h=1.0 / 16.0, spike=100.0)
        assert r1["sup_u"] == r2["sup_u"]
        assert [a["slack"] for a in r1["per_eps"]] == [
            a["slack"] for a in r2["per_eps"]
        ]


class TestComparison:
    def test_bound_holds(self):
        rep = comparison_experiment(h=1.0 / 32.0)
        assert rep["bound_ok"] and rep["converged"]

    def test_bound_with_distinct_data(self):
        rep = comparison_experiment(
            h=1.0 / 32.0, g_sub="x", g_super="zero", f_sub=-1.0, f_super=0.0
        )
        assert rep["bound_ok"]


class TestRemovability:
    def test_laplace_benchmark(self):
        rep = removability_experiment(h=1.0 / 32.0)
        assert rep["decreasing"]
        assert rep["final_ok"]
        assert rep["alpha_star"] == 0.0

    def test_alpha_star_negative_refused(self):
        params = ModelParams(lam=1.0, Lam=2.0, p=2, delta=1.0)
        with pytest.raises(ParameterError):
            removability_experiment(params=params)

    def test_p1_gated(self):
        # alpha* = -1 for p = 1: the 2-D desk scale exercises alpha* = 0 only
        params = ModelParams(lam=1.0, Lam=1.0, p=1, delta=1.0)
        with pytest.raises(ParameterError, match="alpha"):
            removability_experiment(params=params)
