import math

import numpy as np
import pytest

from framex import (NumericalError, chebyshev_eval, discrete_norms, equispaced_grid,
                    gauss_legendre, legendre_deriv_eval, legendre_eval)


class TestEquispacedGrid:
    def test_small_grids(self):
        assert equispaced_grid(2).nodes.tolist() == [-1.0, 0.0, 1.0]
        assert equispaced_grid(4).nodes.tolist() == [-1.0, -0.5, 0.0, 0.5, 1.0]

    def test_m5_interior_values(self):
        nodes = equispaced_grid(5).nodes
        # -1 + 2i/5 evaluated exactly: +-0.2 are the nearest doubles
        assert nodes[2] == -0.2
        assert nodes[3] == 0.2

    def test_endpoints_symmetry_monotone(self):
        for m in (1, 2, 7, 40, 123):
            nodes = equispaced_grid(m).nodes
            assert nodes[0] == -1.0 and nodes[m] == 1.0
            assert np.all(np.diff(nodes) > 0)
            np.testing.assert_array_equal(nodes, -nodes[::-1])

    def test_rejects_degenerate(self):
        with pytest.raises(ValueError):
            equispaced_grid(0)


class TestLegendre:
    def test_value_at_one(self):
        np.testing.assert_allclose(legendre_eval(3, 1.0), np.ones(4), rtol=0, atol=0)

    def test_p2_at_zero(self):
        np.testing.assert_allclose(legendre_eval(2, 0.0), [1.0, 0.0, -0.5], atol=0)

    def test_p5_closed_form(self):
        # (63 x^5 - 70 x^3 + 15 x) / 8 at x = 0.3
        vals = legendre_eval(5, 0.3)
        assert abs(vals[5] - 0.34538625) < 1e-14

    def test_vectorized_matches_scalar(self):
        xs = np.linspace(-2.0, 2.0, 11)
        table = legendre_eval(6, xs)
        for j, x in enumerate(xs):
            np.testing.assert_allclose(table[:, j], legendre_eval(6, x), rtol=1e-15)

    def test_ode_residual(self):
        # (1-x^2) P'' - 2x P' + i(i+1) P = 0
        rng = np.random.default_rng(0)
        xs = rng.uniform(-0.99, 0.99, 50)
        n = 25
        p = legendre_eval(n, xs)
        dp = legendre_deriv_eval(n, 1, xs)
        ddp = legendre_deriv_eval(n, 2, xs)
        for i in range(n + 1):
            res = (1 - xs**2) * ddp[i] - 2 * xs * dp[i] + i * (i + 1) * p[i]
            scale = np.abs(ddp[i]) + np.abs(dp[i]) + i * (i + 1) * np.abs(p[i]) + 1.0
            assert np.max(np.abs(res) / scale) < 1e-9


class TestLegendreDerivatives:
    def test_first_derivative_at_zero(self):
        np.testing.assert_allclose(legendre_deriv_eval(2, 1, 0.0), [0.0, 1.0, 0.0], atol=0)

    def test_p3_second_derivative(self):
        # P_3 = (5x^3 - 3x)/2 so P_3'' = 15x
        vals = legendre_deriv_eval(3, 2, 0.5)
        assert abs(vals[3] - 7.5) < 1e-13

    def test_order_beyond_degree_is_zero(self):
        for n in (0, 3, 7):
            assert not legendre_deriv_eval(n, n + 1, 0.37).any()

    def test_order_zero_is_value(self):
        np.testing.assert_array_equal(legendre_deriv_eval(4, 0, 0.2), legendre_eval(4, 0.2))

    def test_rejects_negative_order(self):
        with pytest.raises(ValueError):
            legendre_deriv_eval(3, -1, 0.0)


class TestChebyshev:
    def test_value_at_one(self):
        np.testing.assert_allclose(chebyshev_eval(4, 1.0), np.ones(5), atol=0)

    def test_t2_at_half(self):
        np.testing.assert_allclose(chebyshev_eval(2, 0.5), [1.0, 0.5, -0.5], atol=1e-16)

    def test_trig_identity(self):
        x = math.cos(math.pi / 7)
        assert abs(chebyshev_eval(6, x)[6] - math.cos(6 * math.pi / 7)) < 1e-14

    def test_bounded_on_interval(self):
        xs = np.linspace(-1, 1, 501)
        assert np.max(np.abs(chebyshev_eval(30, xs))) <= 1.0 + 1e-12


class TestGaussLegendre:
    def test_one_point_is_midpoint(self):
        rule = gauss_legendre(1, -1.0, 1.0)
        np.testing.assert_allclose(rule.nodes, [0.0], atol=1e-16)
        np.testing.assert_allclose(rule.weights, [2.0], rtol=1e-15)

    def test_two_point_classical(self):
        rule = gauss_legendre(2, -1.0, 1.0)
        np.testing.assert_allclose(rule.nodes, [-1 / math.sqrt(3), 1 / math.sqrt(3)], rtol=1e-14)
        np.testing.assert_allclose(rule.weights, [1.0, 1.0], rtol=1e-14)

    def test_monomial_on_stretched_interval(self):
        rule = gauss_legendre(20, -1.5, 1.5)
        exact = 2 * 1.5**11 / 11
        assert abs(rule.integrate(lambda x: x**10) - exact) < 1e-13 * exact

    @pytest.mark.parametrize("count,a,b", [(1, -1, 1), (5, -1, 1), (37, -2.5, 0.5), (120, -2, 2)])
    def test_weight_sum_and_exactness(self, count, a, b):
        rule = gauss_legendre(count, a, b)
        assert np.all(rule.weights > 0)
        assert abs(rule.weights.sum() - (b - a)) < 1e-13 * (b - a)
        # exact through degree 2*count - 1
        for deg in {d for d in (1, 2, count, 2 * count - 1) if d <= 2 * count - 1}:
            exact = (b ** (deg + 1) - a ** (deg + 1)) / (deg + 1)
            got = rule.integrate(rule.nodes**deg)
            scale = (abs(b) ** (deg + 1) + abs(a) ** (deg + 1)) / (deg + 1)
            assert abs(got - exact) < 1e-12 * max(scale, 1.0)

    def test_rejects_bad_arguments(self):
        with pytest.raises(ValueError):
            gauss_legendre(0, -1, 1)
        with pytest.raises(ValueError):
            gauss_legendre(3, 1.0, 1.0)


class TestDiscreteNorms:
    def test_constant_vector(self):
        sup, l2 = discrete_norms(np.ones(4))
        assert sup == 1.0
        assert abs(l2 - math.sqrt(2.0)) < 1e-15

    def test_single_spike(self):
        sup, l2 = discrete_norms([1.0, 0.0, 0.0])
        assert sup == 1.0
        assert abs(l2 - math.sqrt(2.0 / 3.0)) < 1e-15

    def test_chain_inequality_random(self):
        rng = np.random.default_rng(7)
        for _ in range(1000):
            m = int(rng.integers(1, 60))
            v = rng.standard_normal(m + 1) + 1j * rng.standard_normal(m + 1)
            sup, l2 = discrete_norms(v)
            assert math.sqrt(2.0 / (m + 1)) * sup <= l2 * (1 + 1e-14)
            assert l2 <= math.sqrt(2.0) * sup * (1 + 1e-14)

    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            discrete_norms([])


def test_numerical_error_is_runtime_error():
    assert issubclass(NumericalError, RuntimeError)
