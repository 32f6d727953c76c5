from typing import Optional, Sequence

import numpy as np

from xassoc.exceptions import EmptyInput, ShapeMismatch
from xassoc.numerics import Vector, as_matrix

from .types import AssocReport, ResidualSummary


def per_user_errors(
    preds: Sequence[Vector], truths: Sequence[Vector], K: Optional[int] = None
) -> tuple[np.ndarray, np.ndarray]:
    """(1/K)‖û−u‖₁ and sqrt((1/K)‖û−u‖²₂) for each user."""
    if len(preds) != len(truths):
        raise ShapeMismatch(f"{len(preds)} predictions for {len(truths)} users")

    if not len(preds):
        raise EmptyInput("cannot score an empty set of users")

    P = as_matrix(np.asarray(preds, dtype=np.float64), name="preds")
    U = as_matrix(np.asarray(truths, dtype=np.float64), name="truths")

    K = K if K is not None else U.shape[1]
    if P.shape[1] != K or U.shape[1] != K:
        raise ShapeMismatch(f"expected vectors of dim {K}, got {P.shape[1]} and {U.shape[1]}")

    residual = P - U
    mae = np.abs(residual).sum(axis=1) / K
    rmse = np.sqrt((residual**2).sum(axis=1) / K)

    return mae, rmse


def mae_rmse(
    preds: Sequence[Vector],
    truths: Sequence[Vector],
    K: Optional[int] = None,
    platform: str = "Y",
) -> AssocReport:
    mae, rmse = per_user_errors(preds, truths, K)

    return AssocReport(
        platform=platform,
        mae=float(mae.mean()),
        rmse=float(rmse.mean()),
        n_users=len(mae),
        dim=K if K is not None else len(truths[0]),
        residuals=ResidualSummary(
            min_mae=float(mae.min()),
            median_mae=float(np.median(mae)),
            max_mae=float(mae.max()),
            min_rmse=float(rmse.min()),
            median_rmse=float(np.median(rmse)),
            max_rmse=float(rmse.max()),
        ),
    )
