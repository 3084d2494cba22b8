import math

import numpy as np
import pytest

from framex import (bernstein_ellipse_sup, breakpoint, lookup, osc, registry,
                    resolution_point, rho_rate, tau_of_gamma)


class TestRegistry:
    def test_exact_entries(self):
        names = {tf.name for tf in registry()}
        assert names == {"runge1", "fig2_f1", "fig2_f2", "fig2_f3", "fig4_f1", "fig4_f2",
                         "osc40"}

    def test_theta_star_values(self):
        tf = {t.name: t for t in registry()}
        assert math.isclose(tf["runge1"].theta_star, math.sqrt(2) + 1, rel_tol=1e-15)
        assert math.isclose(tf["fig2_f1"].theta_star, (1 + math.sqrt(5)) / 2, rel_tol=1e-15)
        assert math.isclose(tf["fig2_f2"].theta_star, (10 + math.sqrt(19)) / 9, rel_tol=1e-15)
        assert math.isclose(tf["fig2_f3"].theta_star, math.sqrt(10 / 9) + 1 / 3, rel_tol=1e-15)
        assert math.isclose(tf["fig4_f1"].theta_star, (math.sqrt(17) + 1) / 4, rel_tol=1e-15)
        assert math.isclose(tf["fig4_f2"].theta_star, (30 + math.sqrt(59)) / 29, rel_tol=1e-15)
        assert tf["osc40"].theta_star == math.inf

    def test_evaluators(self):
        tf = {t.name: t for t in registry()}
        xs = np.array([-1.0, 0.0, 0.5])
        np.testing.assert_allclose(tf["runge1"].eval(xs), [0.5, 1.0, 0.8], rtol=1e-15)
        np.testing.assert_allclose(tf["fig2_f2"].eval(xs), [1 / 19, 0.1, 1 / 5.5], rtol=1e-15)
        np.testing.assert_allclose(tf["fig4_f1"].eval(xs), [1 / 17, 1.0, 0.2], rtol=1e-15)

    def test_branch_function_is_complex_on_real_line(self):
        f3 = lookup("fig2_f3")
        vals = f3.eval(np.array([0.0, 0.5, 1.0]))
        assert np.iscomplexobj(vals)
        assert np.all(np.isfinite(vals))
        # 25 sqrt(9x^2-10) at x=1 has modulus 25
        assert abs(abs(vals[2]) - 25.0) < 1e-12

    def test_osc_modulus_one(self):
        f = osc(10.0)
        xs = np.linspace(-1, 1, 101)
        np.testing.assert_allclose(np.abs(f.eval(xs)), np.ones(101), rtol=1e-14)
        assert f.omega == 10.0

    def test_lookup_osc_forms(self):
        assert lookup("osc", omega=7.5).name == "osc7.5"
        assert lookup("osc12").omega == 12.0
        with pytest.raises(ValueError):
            lookup("osc")
        with pytest.raises(ValueError):
            lookup("nope")


class TestTau:
    def test_values(self):
        assert tau_of_gamma(1.0) == 1.0
        assert abs(tau_of_gamma(1.8) - 3.2966629547095765) < 1e-15
        assert math.isclose(tau_of_gamma(math.sqrt(2)), math.sqrt(2) + 1, rel_tol=1e-15)

    def test_rounded_literature_value(self):
        assert round(tau_of_gamma(1.8), 2) == 3.30


class TestBreakpoint:
    def test_exponent_approaches_one(self):
        eps = 1e-8
        theta = tau_of_gamma(1.8) * (1 - 1e-12)
        assert math.isclose(breakpoint(eps, theta, 1.8), eps, rel_tol=1e-9)

    def test_runge_case(self):
        expo = math.log(math.sqrt(2) + 1) / math.log(tau_of_gamma(1.8))
        assert abs(expo - 0.74) < 0.002
        for eps in (1e-6, 1e-10):
            assert math.isclose(breakpoint(eps, math.sqrt(2) + 1, 1.8), eps**expo,
                                rel_tol=1e-14)

    def test_golden_ratio_case(self):
        theta = (1 + math.sqrt(5)) / 2
        got = breakpoint(1e-10, theta, 2.0)
        expo = math.log(theta) / math.log(2 + math.sqrt(3))
        assert math.isclose(got, (1e-10) ** expo, rel_tol=1e-14)

    def test_rejects_theta_at_or_above_tau(self):
        with pytest.raises(ValueError):
            breakpoint(1e-8, tau_of_gamma(1.5), 1.5)
        with pytest.raises(ValueError):
            breakpoint(1e-8, 5.0, 1.5)
        with pytest.raises(ValueError):
            breakpoint(1e-8, 1.0, 1.5)

    def test_monotone_in_epsilon_and_theta(self):
        rng = np.random.default_rng(1)
        for _ in range(200):
            gamma = float(rng.uniform(1.05, 3.0))
            tau = tau_of_gamma(gamma)
            th = float(rng.uniform(1.0 + 1e-6, tau - 1e-9))
            e1, e2 = sorted(rng.uniform(1e-14, 1e-2, 2))
            assert breakpoint(e1, th, gamma) <= breakpoint(e2, th, gamma) * (1 + 1e-12)
            th2 = float(rng.uniform(th, tau - 1e-12))
            # larger theta means a larger fractional power, hence a smaller level
            assert breakpoint(e1, th2, gamma) <= breakpoint(e1, th, gamma) * (1 + 1e-12)


class TestRhoRate:
    def test_gamma_to_one_kills_decay(self):
        assert math.isclose(rho_rate(5.0, 1e-10, 1.0 + 1e-14), 1.0, rel_tol=1e-9)

    def test_unit_exponent_case(self):
        rho = rho_rate(math.exp(36.0), math.exp(-1.0), math.sqrt(2.0))
        assert math.isclose(rho, math.e, rel_tol=1e-12)

    def test_direct_formula(self):
        theta, eps, gamma = math.sqrt(2) + 1, 1e-14, 1.4
        c_star = math.sqrt(gamma**2 - 1) / (36 * math.log(1 / eps))
        assert math.isclose(rho_rate(theta, eps, gamma), theta**c_star, rel_tol=1e-15)

    def test_monotone(self):
        rng = np.random.default_rng(2)
        for _ in range(200):
            gamma = float(rng.uniform(1.01, 3.0))
            eps = float(rng.uniform(1e-14, 1e-2))
            th1, th2 = sorted(rng.uniform(1.01, 10.0, 2))
            assert rho_rate(th1, eps, gamma) <= rho_rate(th2, eps, gamma) * (1 + 1e-12)
            g2 = float(rng.uniform(gamma, 4.0))
            assert rho_rate(th1, eps, gamma) <= rho_rate(th1, eps, g2) * (1 + 1e-12)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            rho_rate(0.9, 1e-8, 1.5)
        with pytest.raises(ValueError):
            rho_rate(2.0, 1e-8, 1.0)
        with pytest.raises(ValueError):
            rho_rate(2.0, 0.5, 1.5)


class TestResolutionPoint:
    def test_values(self):
        assert math.isclose(resolution_point(40, 1.25), 50 * math.pi, rel_tol=1e-15)
        assert math.isclose(resolution_point(10, 1.0), 10 * math.pi, rel_tol=1e-15)
        assert math.isclose(resolution_point(10, 2.0), 20 * math.pi, rel_tol=1e-15)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            resolution_point(0.0, 1.5)
        with pytest.raises(ValueError):
            resolution_point(10.0, 0.5)


class TestBernsteinEllipseSup:
    def test_constant(self):
        assert math.isclose(bernstein_ellipse_sup(lambda z: np.ones_like(z), 2.0), 1.0,
                            rel_tol=1e-15)

    def test_exp_attains_at_right_vertex(self):
        # max of |exp| on the ellipse is at the real vertex (theta + 1/theta)/2
        theta = 2.0
        sup = bernstein_ellipse_sup(np.exp, theta, samples=8000)
        assert math.isclose(sup, math.exp((theta + 1 / theta) / 2), rel_tol=1e-6)

    def test_monomial_growth(self):
        theta = 3.0
        sup = bernstein_ellipse_sup(lambda z: z**4, theta, samples=8000)
        assert math.isclose(sup, ((theta + 1 / theta) / 2) ** 4, rel_tol=1e-6)
