from dataclasses import dataclass, field, replace
from typing import ClassVar

import numpy as np

from xassoc.exceptions import CheckpointError, EmptyInput, ShapeMismatch
from xassoc.numerics import Matrix, ParameterSet, Vector, as_matrix, as_vector, sigmoid
from xassoc.types import DIRECTIONS, Direction, SubstituteMode

from .base import AssociationModel, DirectionalModelMixin
from .mixins import MinibatchAdamMixin
from .types import CheckpointDocument, ModelKind, TrainConfig, matrix_payload, payload_array

WEIGHTS = ("W1", "W2")
BIASES = ("b1", "b2")


@dataclass
class MlpMapper(MinibatchAdamMixin, DirectionalModelMixin, AssociationModel):
    """u_src -> W2·g(W1·u_src + b1) + b2, sigmoid hidden layer and linear output."""

    kind: ClassVar[ModelKind] = "mlp"

    params: ParameterSet
    weight_decay: float = 0.0
    direction: Direction = "t2y"
    loss_trace: list[float] = field(default_factory=list)

    @property
    def n_src(self) -> int:
        return self.params["W1"].shape[1]

    @property
    def n_dst(self) -> int:
        return self.params["W2"].shape[0]

    def with_params(self, params: ParameterSet) -> "MlpMapper":
        return replace(self, params=params)

    def predict(
        self,
        u_src: Vector,
        direction: Direction,
        substitute: SubstituteMode = "mean",
    ) -> Vector:
        self.check_direction(direction)
        return mlp_predict(self, u_src)

    def to_checkpoint(self) -> CheckpointDocument:
        return CheckpointDocument(
            kind=self.kind,
            layout={
                "n_src": self.n_src,
                "hidden": self.params["W1"].shape[0],
                "n_dst": self.n_dst,
            },
            weights={
                name: matrix_payload(self.params[name]) for name in WEIGHTS + BIASES
            },
            hyper={
                "weight_decay": self.weight_decay,
                "direction": self.direction,
                "activation": "sigmoid",
                "loss_trace": list(self.loss_trace),
            },
        )

    @classmethod
    def from_checkpoint(cls, document: CheckpointDocument) -> "MlpMapper":
        try:
            params = {
                name: payload_array(document.weights[name], vector=name in BIASES)
                for name in WEIGHTS + BIASES
            }
            direction = document.hyper["direction"]
        except KeyError as exc:
            raise CheckpointError(f"checkpoint is missing {exc.args[0]}")

        if direction not in DIRECTIONS:
            raise CheckpointError(f"unknown direction {direction!r}")

        hidden, n_src = params["W1"].shape
        expected = parameter_shapes(n_src, hidden, params["W2"].shape[0])
        for name, shape in expected.items():
            if params[name].shape != shape:
                raise CheckpointError(
                    f"{name} has shape {params[name].shape}, expected {shape}"
                )

        return cls(
            params=params,
            weight_decay=document.hyper.get("weight_decay", 0.0),
            direction=direction,
            loss_trace=list(document.hyper.get("loss_trace", [])),
        )


def parameter_shapes(n_src: int, hidden: int, n_dst: int) -> dict[str, tuple[int, ...]]:
    return {
        "W1": (hidden, n_src),
        "b1": (hidden,),
        "W2": (n_dst, hidden),
        "b2": (n_dst,),
    }


def _forward(params: ParameterSet, X: Matrix) -> tuple[Matrix, Matrix]:
    H = sigmoid(X @ params["W1"].T + params["b1"])
    return H, H @ params["W2"].T + params["b2"]


def _loss_and_grad(
    params: ParameterSet, X: Matrix, Y: Matrix, weight_decay: float
) -> tuple[float, ParameterSet]:
    H, out = _forward(params, X)
    residual = out - Y

    loss = np.sum(residual**2) + weight_decay * sum(
        np.sum(params[name] ** 2) for name in WEIGHTS
    )

    d_out = 2.0 * residual
    dZ = (d_out @ params["W2"]) * H * (1.0 - H)

    return float(loss), {
        "W1": dZ.T @ X + 2.0 * weight_decay * params["W1"],
        "b1": dZ.sum(axis=0),
        "W2": d_out.T @ H + 2.0 * weight_decay * params["W2"],
        "b2": d_out.sum(axis=0),
    }


def _rows(model: MlpMapper, U_src: Matrix, U_dst: Matrix) -> tuple[Matrix, Matrix]:
    if U_src.shape[0] != model.n_src or U_dst.shape[0] != model.n_dst:
        raise ShapeMismatch(
            f"data {U_src.shape}/{U_dst.shape} does not match mapper "
            f"{model.n_src}->{model.n_dst}"
        )

    return U_src.T, U_dst.T


def mlp_loss(model: MlpMapper, U_src: Matrix, U_dst: Matrix) -> float:
    """Σ_u ‖f(u_src) − u_dst‖² + λ Σ‖W‖²_F; users are columns."""
    X, Y = _rows(model, U_src, U_dst)
    loss, _ = _loss_and_grad(model.params, X, Y, model.weight_decay)
    return loss


def mlp_grad(model: MlpMapper, U_src: Matrix, U_dst: Matrix) -> ParameterSet:
    X, Y = _rows(model, U_src, U_dst)
    _, grads = _loss_and_grad(model.params, X, Y, model.weight_decay)
    return grads


def init_mlp(
    n_src: int, hidden: int, n_dst: int, cfg: TrainConfig, direction: Direction = "t2y"
) -> MlpMapper:
    """Uniform first layer; the output layer starts at zero."""
    shapes = parameter_shapes(n_src, hidden, n_dst)
    params = MlpMapper.init_uniform(shapes, {}, cfg)
    params["W2"] = np.zeros(shapes["W2"])

    return MlpMapper(params=params, weight_decay=cfg.weight_decay, direction=direction)


def mlp_fit(
    U_src: Matrix,
    U_dst: Matrix,
    hidden: int,
    cfg: TrainConfig,
    direction: Direction = "t2y",
) -> MlpMapper:
    U_src = as_matrix(U_src, name="U_src")
    U_dst = as_matrix(U_dst, name="U_dst")

    if U_src.shape[1] != U_dst.shape[1]:
        raise ShapeMismatch(
            f"U_src has {U_src.shape[1]} users but U_dst has {U_dst.shape[1]}"
        )

    if U_src.shape[1] == 0:
        raise EmptyInput("cannot fit a mapper without users")

    model = init_mlp(U_src.shape[0], hidden, U_dst.shape[0], cfg, direction)
    X, Y = U_src.T, U_dst.T

    def batch_loss_and_grad(params: ParameterSet, rows: np.ndarray):
        return _loss_and_grad(params, X[rows], Y[rows], cfg.weight_decay)

    def full_loss(params: ParameterSet) -> float:
        _, out = _forward(params, X)
        decay = sum(np.sum(params[name] ** 2) for name in WEIGHTS)
        return float(np.sum((out - Y) ** 2) + cfg.weight_decay * decay)

    params, trace = model.run_minibatch_adam(
        model.params, {}, X.shape[0], batch_loss_and_grad, full_loss, cfg
    )

    return replace(model, params=params, loss_trace=trace)


def mlp_predict(model: MlpMapper, u_src) -> Vector:
    u_src = as_vector(u_src, dim=model.n_src, name="u_src")
    _, out = _forward(model.params, u_src[None, :])
    return out[0]
