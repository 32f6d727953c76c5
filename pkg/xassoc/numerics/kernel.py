from typing import Callable

import numpy as np
import numpy.typing as npt

from xassoc.exceptions import NonFiniteValue, ShapeMismatch

from .types import Matrix, Vector


def as_vector(values, dim: int | None = None, name: str = "vector") -> Vector:
    vector = np.asarray(values, dtype=np.float64)

    if vector.ndim != 1:
        raise ShapeMismatch(f"{name} must be one-dimensional, got shape {vector.shape}")

    if dim is not None and vector.shape[0] != dim:
        raise ShapeMismatch(f"{name} has {vector.shape[0]} entries, expected {dim}")

    if not np.all(np.isfinite(vector)):
        raise NonFiniteValue(f"{name} contains NaN or Inf")

    return vector


def as_matrix(values, shape: tuple[int, int] | None = None, name: str = "matrix") -> Matrix:
    matrix = np.asarray(values, dtype=np.float64)

    if matrix.ndim != 2:
        raise ShapeMismatch(f"{name} must be two-dimensional, got shape {matrix.shape}")

    if shape is not None and matrix.shape != shape:
        raise ShapeMismatch(f"{name} has shape {matrix.shape}, expected {shape}")

    if not np.all(np.isfinite(matrix)):
        raise NonFiniteValue(f"{name} contains NaN or Inf")

    return matrix


def sigmoid(x: npt.ArrayLike) -> npt.NDArray[np.float64]:
    """Elementwise logistic function, evaluated without overflow for large |x|."""
    x = np.asarray(x, dtype=np.float64)
    out = np.empty_like(x)

    positive = x >= 0
    out[positive] = 1.0 / (1.0 + np.exp(-x[positive]))

    exp_x = np.exp(x[~positive])
    out[~positive] = exp_x / (1.0 + exp_x)

    return out


def numerical_gradient(
    loss_fn: Callable[[Vector], float], params: npt.ArrayLike, eps: float = 1e-5
) -> Vector:
    """Central finite differences of `loss_fn` around `params`."""
    if eps <= 0:
        raise ValueError("eps must be positive")

    theta = np.array(params, dtype=np.float64)
    grad = np.zeros_like(theta)

    for j in range(theta.shape[0]):
        original = theta[j]

        theta[j] = original + eps
        upper = float(loss_fn(theta))
        theta[j] = original - eps
        lower = float(loss_fn(theta))
        theta[j] = original

        if not (np.isfinite(upper) and np.isfinite(lower)):
            raise NonFiniteValue(f"loss is not finite around coordinate {j}")

        grad[j] = (upper - lower) / (2.0 * eps)

    return grad
