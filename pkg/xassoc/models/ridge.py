from dataclasses import dataclass, field
from typing import ClassVar

import numpy as np

from xassoc.exceptions import CheckpointError, ShapeMismatch, SingularSystem
from xassoc.numerics import Matrix, Vector, as_matrix, as_vector
from xassoc.types import DIRECTIONS, Direction, SubstituteMode

from .base import AssociationModel, DirectionalModelMixin
from .types import CheckpointDocument, ModelKind, matrix_payload, payload_array


@dataclass
class RidgeTransfer(DirectionalModelMixin, AssociationModel):
    """Linear transfer û = W·u_src fitted by ridge regression."""

    kind: ClassVar[ModelKind] = "lr"

    W: Matrix
    ridge_lambda: float
    direction: Direction = "t2y"
    loss_trace: list[float] = field(default_factory=list)

    def predict(
        self,
        u_src: Vector,
        direction: Direction,
        substitute: SubstituteMode = "mean",
    ) -> Vector:
        self.check_direction(direction)
        return ridge_predict(self, u_src)

    def to_checkpoint(self) -> CheckpointDocument:
        return CheckpointDocument(
            kind=self.kind,
            weights={"W": matrix_payload(self.W)},
            hyper={"lambda": self.ridge_lambda, "direction": self.direction},
        )

    @classmethod
    def from_checkpoint(cls, document: CheckpointDocument) -> "RidgeTransfer":
        try:
            W = payload_array(document.weights["W"])
            ridge_lambda = document.hyper["lambda"]
            direction = document.hyper["direction"]
        except KeyError as exc:
            raise CheckpointError(f"checkpoint is missing {exc.args[0]}")

        if direction not in DIRECTIONS:
            raise CheckpointError(f"unknown direction {direction!r}")

        return cls(W=W, ridge_lambda=ridge_lambda, direction=direction)


def ridge_fit(
    U_src: Matrix, U_dst: Matrix, ridge_lambda: float, direction: Direction = "t2y"
) -> RidgeTransfer:
    """Minimise ‖W·U_src − U_dst‖²_F + λ‖W‖²_F; users are columns.

    W = U_dst·U_srcᵀ·(U_src·U_srcᵀ + λI)⁻¹, solved through the symmetric system
    rather than an explicit inverse.
    """
    U_src = as_matrix(U_src, name="U_src")
    U_dst = as_matrix(U_dst, name="U_dst")

    if U_src.shape[1] != U_dst.shape[1]:
        raise ShapeMismatch(
            f"U_src has {U_src.shape[1]} users but U_dst has {U_dst.shape[1]}"
        )

    if ridge_lambda < 0:
        raise ValueError("ridge lambda must be non-negative")

    n_src = U_src.shape[0]
    gram = U_src @ U_src.T + ridge_lambda * np.eye(n_src)

    if ridge_lambda == 0 and np.linalg.matrix_rank(gram) < n_src:
        raise SingularSystem(
            "U_src·U_srcᵀ is singular; use a positive ridge lambda"
        )

    try:
        W = np.linalg.solve(gram, U_src @ U_dst.T).T
    except np.linalg.LinAlgError:
        raise SingularSystem("ridge system is singular; use a positive ridge lambda")

    return RidgeTransfer(W=W, ridge_lambda=ridge_lambda, direction=direction)


def ridge_predict(model: RidgeTransfer, u_src) -> Vector:
    u_src = as_vector(u_src, dim=model.W.shape[1], name="u_src")
    return model.W @ u_src
