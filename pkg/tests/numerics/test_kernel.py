import numpy as np
import pytest

from xassoc.exceptions import NonFiniteValue, ShapeMismatch
from xassoc.numerics import as_matrix, as_vector, numerical_gradient, sigmoid


class TestSigmoid:
    def test_zero(self):
        assert sigmoid(np.zeros(2)).tolist() == [0.5, 0.5]

    def test_one(self):
        assert sigmoid(np.array([1.0]))[0] == pytest.approx(0.7310585786, abs=1e-9)

    def test_symmetry(self, rng):
        x = rng.normal(scale=5.0, size=50)
        np.testing.assert_allclose(sigmoid(x) + sigmoid(-x), 1.0, atol=1e-15)

    def test_no_overflow_at_extremes(self):
        out = sigmoid(np.array([-1000.0, 1000.0]))
        assert out.tolist() == [0.0, 1.0]


class TestValidation:
    def test_vector_dim(self):
        with pytest.raises(ShapeMismatch):
            as_vector([0.1, 0.2], dim=3)

    def test_vector_rejects_nan(self):
        with pytest.raises(NonFiniteValue):
            as_vector([0.1, np.nan])

    def test_matrix_needs_two_dims(self):
        with pytest.raises(ShapeMismatch):
            as_matrix([1.0, 2.0])


class TestNumericalGradient:
    def test_square(self):
        grad = numerical_gradient(lambda theta: float(theta[0] ** 2), np.array([3.0]))
        assert grad[0] == pytest.approx(6.0, abs=1e-6)

    def test_constant(self):
        grad = numerical_gradient(lambda theta: 4.0, np.ones(5))
        assert grad.tolist() == [0.0] * 5

    def test_linear(self):
        grad = numerical_gradient(lambda theta: float(theta.sum()), np.arange(4.0))
        np.testing.assert_allclose(grad, np.ones(4), atol=1e-8)

    def test_does_not_mutate_params(self):
        params = np.array([1.0, 2.0])
        numerical_gradient(lambda theta: float(theta @ theta), params)
        assert params.tolist() == [1.0, 2.0]

    def test_non_finite_loss(self):
        with pytest.raises(NonFiniteValue):
            numerical_gradient(lambda theta: float("nan"), np.zeros(1))
