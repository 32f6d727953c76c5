from typing import Any, ClassVar, Literal, Protocol

import numpy as np
from pydantic import BaseModel, Field, model_validator

from xassoc.numerics import Vector
from xassoc.types import Direction, SubstituteMode

CHECKPOINT_FORMAT_VERSION = 1

ModelKind = Literal["dca", "ma", "lr", "la", "mlp"]
MODEL_KINDS: tuple[ModelKind, ...] = ("lr", "la", "mlp", "ma", "dca")

Activation = Literal["sigmoid"]


class AutoencoderLayout(BaseModel):
    """Input sizes and the hidden split h = [h^T, h^C, h^Y]."""

    n_T: int = Field(ge=1)
    n_Y: int = Field(ge=1)
    m_T: int = Field(default=10, ge=0)
    m_C: int = Field(default=80, ge=0)
    m_Y: int = Field(default=10, ge=0)

    @model_validator(mode="after")
    def check_hidden(self) -> "AutoencoderLayout":
        if self.m < 1:
            raise ValueError("hidden layer must have at least one unit")
        return self

    @property
    def m(self) -> int:
        return self.m_T + self.m_C + self.m_Y

    @property
    def is_fully_connected(self) -> bool:
        return self.m_T == 0 and self.m_Y == 0

    def blocks(self) -> dict[str, slice]:
        return {
            "T": slice(0, self.m_T),
            "C": slice(self.m_T, self.m_T + self.m_C),
            "Y": slice(self.m_T + self.m_C, self.m),
        }


class TrainConfig(BaseModel):
    epochs: int = Field(default=200, ge=1)
    batch_size: int = Field(default=64, ge=1)

    lr: float = Field(default=0.001, gt=0)
    beta1: float = Field(default=0.9, ge=0, lt=1)
    beta2: float = Field(default=0.999, ge=0, lt=1)
    epsilon: float = Field(default=1e-8, gt=0)

    # λ: squared Frobenius penalty on weight matrices (biases excluded)
    weight_decay: float = Field(default=0.005, ge=0)
    # μ: L1 penalty on the hidden layer
    sparsity: float = Field(default=0.0001, ge=0)

    init_scale: float = Field(default=0.05, ge=0)
    activation: Activation = "sigmoid"
    seed: int = 0
    log_every: int = Field(default=20, ge=1)


class ModelSpec(BaseModel):
    """Everything `fit_model` needs to train one model kind for one direction."""

    kind: ModelKind = "dca"
    direction: Direction = "t2y"

    # autoencoders
    m_T: int = Field(default=10, ge=0)
    m_C: int = Field(default=80, ge=0)
    m_Y: int = Field(default=10, ge=0)

    # mlp
    hidden: int = Field(default=100, ge=1)

    # ridge
    ridge_lambda: float = Field(default=800.0, ge=0)

    # latent attributes
    atoms: int = Field(default=40, ge=1)
    la_lambda: float = Field(default=0.2, ge=0)
    la_iters: int = Field(default=50, ge=1)

    train: TrainConfig = Field(default_factory=TrainConfig)


class MatrixPayload(BaseModel):
    rows: int = Field(ge=0)
    cols: int = Field(ge=0)
    data: list[float]

    @model_validator(mode="after")
    def check_size(self) -> "MatrixPayload":
        if len(self.data) != self.rows * self.cols:
            raise ValueError(
                f"{len(self.data)} values cannot fill a {self.rows}x{self.cols} matrix"
            )

        if not all(np.isfinite(self.data)):
            raise ValueError("matrix payload contains NaN or Inf")

        return self


class CheckpointDocument(BaseModel):
    format_version: int = CHECKPOINT_FORMAT_VERSION
    kind: ModelKind
    layout: dict[str, Any] = {}
    weights: dict[str, MatrixPayload]
    masks: dict[str, MatrixPayload] = {}
    hyper: dict[str, Any] = {}
    # split/filter settings the model was trained under, replayed by predict/eval
    pipeline: dict[str, Any] = {}


class AssociationModelProtocol(Protocol):
    kind: ClassVar[ModelKind]
    registry: ClassVar[dict[str, type["AssociationModelProtocol"]]]

    loss_trace: list[float]

    def predict(
        self,
        u_src: Vector,
        direction: Direction,
        substitute: SubstituteMode = "mean",
    ) -> Vector:
        """Map a known representation onto the other platform."""
        ...

    def to_checkpoint(self) -> CheckpointDocument:
        ...

    @classmethod
    def from_checkpoint(cls, document: CheckpointDocument) -> "AssociationModelProtocol":
        ...


def default_model_spec(kind: ModelKind, direction: Direction = "t2y") -> ModelSpec:
    """Per-direction hyper-parameters from the original tuning table."""
    t2y = direction == "t2y"
    train = TrainConfig()

    if kind == "lr":
        return ModelSpec(
            kind=kind, direction=direction, ridge_lambda=800.0 if t2y else 150.0
        )

    if kind == "la":
        return ModelSpec(
            kind=kind,
            direction=direction,
            atoms=40 if t2y else 120,
            la_lambda=0.2 if t2y else 0.02,
        )

    if kind == "mlp":
        return ModelSpec(
            kind=kind,
            direction=direction,
            hidden=100 if t2y else 120,
            train=train.model_copy(update={"weight_decay": 0.01, "sparsity": 0.0}),
        )

    if kind == "ma":
        return ModelSpec(
            kind=kind, direction=direction, m_T=0, m_C=90 if t2y else 100, m_Y=0
        )

    return ModelSpec(kind=kind, direction=direction, m_T=10, m_C=80, m_Y=10)


def matrix_payload(values: np.ndarray) -> MatrixPayload:
    matrix = values.reshape(values.shape[0], -1) if values.ndim > 1 else values[:, None]
    return MatrixPayload(
        rows=matrix.shape[0], cols=matrix.shape[1], data=matrix.ravel().tolist()
    )


def payload_array(payload: MatrixPayload, vector: bool = False) -> np.ndarray:
    values = np.array(payload.data, dtype=np.float64).reshape(payload.rows, payload.cols)
    return values[:, 0].copy() if vector else values
