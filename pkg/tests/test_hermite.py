"""Tests for the one-dimensional Gauss-Hermite rules."""

import math

import numpy as np
import pytest

from sgcweak.errors import InvalidOrderError
from sgcweak.hermite import gauss_hermite_rule, gaussian_moment


def quad_monomial(rule, p: int) -> float:
    return float(np.sum(rule.weights * rule.nodes**p))


class TestKnownRules:
    def test_one_point_rule_is_gaussian_mean(self):
        r = gauss_hermite_rule(1)
        np.testing.assert_array_equal(r.nodes, [0.0])
        np.testing.assert_array_equal(r.weights, [1.0])

    def test_two_point_rule(self):
        r = gauss_hermite_rule(2)
        np.testing.assert_allclose(r.nodes, [-1.0, 1.0], atol=1e-15)
        np.testing.assert_allclose(r.weights, [0.5, 0.5], atol=1e-15)

    def test_three_point_rule(self):
        r = gauss_hermite_rule(3)
        np.testing.assert_allclose(r.nodes, [-math.sqrt(3), 0.0, math.sqrt(3)], atol=1e-14)
        np.testing.assert_allclose(r.weights, [1 / 6, 2 / 3, 1 / 6], atol=1e-14)

    def test_five_point_rule_eighth_moment(self):
        r = gauss_hermite_rule(5)
        assert abs(quad_monomial(r, 8) - 105.0) < 1e-10


class TestInvariants:
    @pytest.mark.parametrize("n", range(1, 21))
    def test_weights_sum_to_one(self, n):
        assert abs(gauss_hermite_rule(n).weights.sum() - 1.0) < 1e-14

    @pytest.mark.parametrize("n", range(1, 21))
    def test_weights_positive_nodes_ascending(self, n):
        r = gauss_hermite_rule(n)
        assert (r.weights > 0).all()
        assert (np.diff(r.nodes) > 0).all()

    @pytest.mark.parametrize("n", [2, 3, 7, 20, 33, 64])
    def test_nodes_symmetric(self, n):
        r = gauss_hermite_rule(n)
        np.testing.assert_allclose(r.nodes, -r.nodes[::-1], atol=1e-13)

    @pytest.mark.parametrize("n", range(1, 21))
    def test_polynomial_exactness(self, n):
        # Exact for degree <= 2n - 1; tolerance scales with the moment (p-1)!!.
        r = gauss_hermite_rule(n)
        for p in range(2 * n):
            exact = gaussian_moment(p)
            scale = gaussian_moment(p) if p % 2 == 0 else gaussian_moment(p - 1)
            assert abs(quad_monomial(r, p) - exact) <= 1e-12 * max(scale, 1)

    @pytest.mark.parametrize("n", range(1, 13))
    def test_degree_2n_not_exact(self, n):
        # The signed defect for y^{2n} is -n! for Gauss rules; in particular
        # its magnitude is strictly positive, which catches an off-by-one in
        # the exactness degree.
        r = gauss_hermite_rule(n)
        defect = quad_monomial(r, 2 * n) - gaussian_moment(2 * n)
        assert abs(defect) > 0
        np.testing.assert_allclose(defect, -math.factorial(n), rtol=1e-9)

    @pytest.mark.parametrize("n", [1, 2, 17, 64])
    def test_deterministic_bit_identical(self, n):
        a, b = gauss_hermite_rule(n), gauss_hermite_rule(n)
        assert a.nodes.tobytes() == b.nodes.tobytes()
        assert a.weights.tobytes() == b.weights.tobytes()

    def test_rules_are_immutable(self):
        r = gauss_hermite_rule(4)
        with pytest.raises(ValueError):
            r.nodes[0] = 0.0


class TestErrors:
    @pytest.mark.parametrize("n", [0, -3, 65, 1.5, "4"])
    def test_invalid_order(self, n):
        with pytest.raises(InvalidOrderError):
            gauss_hermite_rule(n)


class TestGaussianMoment:
    def test_values(self):
        assert gaussian_moment(0) == 1
        assert gaussian_moment(1) == 0
        assert gaussian_moment(2) == 1
        assert gaussian_moment(4) == 3
        assert gaussian_moment(8) == 105  # 1*3*5*7

    def test_odd_moments_vanish(self):
        assert all(gaussian_moment(p) == 0 for p in range(1, 40, 2))

    def test_negative_rejected(self):
        with pytest.raises(ValueError):
            gaussian_moment(-1)
