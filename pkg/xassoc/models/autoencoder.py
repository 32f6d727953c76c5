"""Masked multi-modal autoencoder (DCA) and its fully connected variant (MA).

The hidden layer is split into h = [h^T, h^C, h^Y]. Links x^T -> h^Y,
x^Y -> h^T, h^T -> x̂^Y and h^Y -> x̂^T are cut by fixed binary masks, so the
platform-specific blocks only ever see (and feed) their own platform.

Batches are row-major: one example per row.
"""
import logging
from dataclasses import dataclass, field, replace
from typing import ClassVar, Optional, Sequence

import numpy as np

from xassoc.exceptions import CheckpointError, EmptyInput, InvalidConfig, ShapeMismatch
from xassoc.numerics import Matrix, ParameterSet, Vector, sigmoid
from xassoc.representations import AugmentedExample, stack_examples
from xassoc.types import Direction, Platform, SubstituteMode, source_platform, target_platform

from .base import AssociationModel
from .mixins import MinibatchAdamMixin
from .types import (
    AutoencoderLayout,
    CheckpointDocument,
    ModelKind,
    TrainConfig,
    matrix_payload,
    payload_array,
)

logger = logging.getLogger(__name__)

WEIGHTS = ("W1_T", "W1_Y", "W2_T", "W2_Y")
BIASES = ("b1", "b2_T", "b2_Y")


def parameter_shapes(layout: AutoencoderLayout) -> dict[str, tuple[int, ...]]:
    m, n_T, n_Y = layout.m, layout.n_T, layout.n_Y

    return {
        "W1_T": (m, n_T),
        "W1_Y": (m, n_Y),
        "W2_T": (n_T, m),
        "W2_Y": (n_Y, m),
        "b1": (m,),
        "b2_T": (n_T,),
        "b2_Y": (n_Y,),
    }


def build_mask(layout: AutoencoderLayout) -> ParameterSet:
    shapes = parameter_shapes(layout)
    blocks = layout.blocks()
    masks = {name: np.ones(shapes[name]) for name in WEIGHTS}

    masks["W1_T"][blocks["Y"], :] = 0.0
    masks["W1_Y"][blocks["T"], :] = 0.0
    masks["W2_T"][:, blocks["Y"]] = 0.0
    masks["W2_Y"][:, blocks["T"]] = 0.0

    return masks


@dataclass
class MaskedAutoencoder(MinibatchAdamMixin, AssociationModel):
    kind: ClassVar[ModelKind] = "dca"

    layout: AutoencoderLayout
    params: ParameterSet
    masks: ParameterSet
    weight_decay: float = 0.005
    sparsity: float = 0.0001
    # training-set platform means, substituted for the unknown platform
    means: dict[Platform, Vector] = field(default_factory=dict)
    loss_trace: list[float] = field(default_factory=list)

    def __post_init__(self):
        shapes = parameter_shapes(self.layout)

        for name, shape in shapes.items():
            if name not in self.params:
                raise ShapeMismatch(f"missing parameter {name}")

            if self.params[name].shape != shape:
                raise ShapeMismatch(
                    f"{name} has shape {self.params[name].shape}, expected {shape}"
                )

        for name in WEIGHTS:
            if np.any(self.params[name][self.masks[name] == 0.0] != 0.0):
                raise InvalidConfig(f"{name} has non-zero entries at masked positions")

    def with_params(self, params: ParameterSet) -> "MaskedAutoencoder":
        return replace(self, params=params)

    def predict(
        self,
        u_src: Vector,
        direction: Direction,
        substitute: SubstituteMode = "mean",
    ) -> Vector:
        unknown = target_platform(direction)

        if substitute == "zeros":
            fill = np.zeros(self.layout.n_T if unknown == "T" else self.layout.n_Y)
        else:
            fill = self.means[unknown]

        return ae_predict_cross(self, u_src, direction, fill)

    def to_checkpoint(self) -> CheckpointDocument:
        weights = {name: matrix_payload(self.params[name]) for name in WEIGHTS + BIASES}
        for platform, mean in self.means.items():
            weights[f"mean_{platform}"] = matrix_payload(mean)

        return CheckpointDocument(
            kind=self.kind,
            layout=self.layout.model_dump(),
            weights=weights,
            masks={name: matrix_payload(self.masks[name]) for name in WEIGHTS},
            hyper={
                "weight_decay": self.weight_decay,
                "sparsity": self.sparsity,
                "activation": "sigmoid",
                "loss_trace": list(self.loss_trace),
            },
        )

    @classmethod
    def from_checkpoint(cls, document: CheckpointDocument) -> "MaskedAutoencoder":
        layout = AutoencoderLayout.model_validate(document.layout)
        expected_masks = build_mask(layout)

        try:
            params = {
                name: payload_array(document.weights[name], vector=name in BIASES)
                for name in WEIGHTS + BIASES
            }
            masks = {name: payload_array(document.masks[name]) for name in WEIGHTS}
        except KeyError as exc:
            raise CheckpointError(f"checkpoint is missing {exc.args[0]}")

        for name in WEIGHTS:
            if not np.array_equal(masks[name], expected_masks[name]):
                raise CheckpointError(f"mask {name} does not match the layout")

        means = {
            platform: payload_array(document.weights[f"mean_{platform}"], vector=True)
            for platform in ("T", "Y")
            if f"mean_{platform}" in document.weights
        }

        try:
            return cls(
                layout=layout,
                params=params,
                masks=masks,
                weight_decay=document.hyper.get("weight_decay", 0.0),
                sparsity=document.hyper.get("sparsity", 0.0),
                means=means,
                loss_trace=list(document.hyper.get("loss_trace", [])),
            )
        except (InvalidConfig, ShapeMismatch) as exc:
            raise CheckpointError(str(exc))


class MultimodalAutoencoder(MaskedAutoencoder):
    """The fully connected ablation: no platform-specific hidden blocks."""

    kind: ClassVar[ModelKind] = "ma"

    def __post_init__(self):
        if not self.layout.is_fully_connected:
            raise InvalidConfig("MA layout must have m_T = m_Y = 0")

        super().__post_init__()


def autoencoder_class(layout: AutoencoderLayout) -> type[MaskedAutoencoder]:
    return MultimodalAutoencoder if layout.is_fully_connected else MaskedAutoencoder


def zero_autoencoder(layout: AutoencoderLayout, **kwargs) -> MaskedAutoencoder:
    params = {name: np.zeros(shape) for name, shape in parameter_shapes(layout).items()}

    return autoencoder_class(layout)(
        layout=layout, params=params, masks=build_mask(layout), **kwargs
    )


def init_autoencoder(layout: AutoencoderLayout, cfg: TrainConfig) -> MaskedAutoencoder:
    masks = build_mask(layout)
    params = MaskedAutoencoder.init_uniform(parameter_shapes(layout), masks, cfg)

    return autoencoder_class(layout)(
        layout=layout,
        params=params,
        masks=masks,
        weight_decay=cfg.weight_decay,
        sparsity=cfg.sparsity,
    )


def _forward(params: ParameterSet, X_T: Matrix, X_Y: Matrix) -> tuple[Matrix, Matrix, Matrix]:
    H = sigmoid(X_T @ params["W1_T"].T + X_Y @ params["W1_Y"].T + params["b1"])
    return H, *_decode(params, H)


def _decode(params: ParameterSet, H: Matrix) -> tuple[Matrix, Matrix]:
    return (
        sigmoid(H @ params["W2_T"].T + params["b2_T"]),
        sigmoid(H @ params["W2_Y"].T + params["b2_Y"]),
    )


def _check_inputs(model: MaskedAutoencoder, x_T: np.ndarray, x_Y: np.ndarray):
    if x_T.shape[-1] != model.layout.n_T or x_Y.shape[-1] != model.layout.n_Y:
        raise ShapeMismatch(
            f"inputs {x_T.shape}/{x_Y.shape} do not match layout "
            f"n_T={model.layout.n_T}, n_Y={model.layout.n_Y}"
        )


def ae_forward(model: MaskedAutoencoder, x_T, x_Y) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Hidden code and both reconstructions for one example or a row-batch."""
    x_T = np.asarray(x_T, dtype=np.float64)
    x_Y = np.asarray(x_Y, dtype=np.float64)
    _check_inputs(model, x_T, x_Y)

    single = x_T.ndim == 1
    H, XT_hat, XY_hat = _forward(model.params, np.atleast_2d(x_T), np.atleast_2d(x_Y))

    if single:
        return H[0], XT_hat[0], XY_hat[0]

    return H, XT_hat, XY_hat


def ae_decode(model: MaskedAutoencoder, h) -> tuple[np.ndarray, np.ndarray]:
    h = np.asarray(h, dtype=np.float64)
    if h.shape[-1] != model.layout.m:
        raise ShapeMismatch(f"hidden code has {h.shape[-1]} units, expected {model.layout.m}")

    XT_hat, XY_hat = _decode(model.params, np.atleast_2d(h))
    if h.ndim == 1:
        return XT_hat[0], XY_hat[0]

    return XT_hat, XY_hat


def _loss(
    params: ParameterSet,
    arrays: tuple[Matrix, Matrix, Matrix, Matrix],
    weight_decay: float,
    sparsity: float,
) -> float:
    X_T, X_Y, T_T, T_Y = arrays
    H, XT_hat, XY_hat = _forward(params, X_T, X_Y)

    reconstruction = np.sum((XT_hat - T_T) ** 2) + np.sum((XY_hat - T_Y) ** 2)
    decay = sum(np.sum(params[name] ** 2) for name in WEIGHTS)

    return float(reconstruction + weight_decay * decay + sparsity * np.sum(np.abs(H)))


def _loss_and_grad(
    params: ParameterSet,
    masks: ParameterSet,
    arrays: tuple[Matrix, Matrix, Matrix, Matrix],
    weight_decay: float,
    sparsity: float,
) -> tuple[float, ParameterSet]:
    X_T, X_Y, T_T, T_Y = arrays
    H, XT_hat, XY_hat = _forward(params, X_T, X_Y)

    residual_T = XT_hat - T_T
    residual_Y = XY_hat - T_Y
    decay = sum(np.sum(params[name] ** 2) for name in WEIGHTS)
    loss = (
        np.sum(residual_T**2)
        + np.sum(residual_Y**2)
        + weight_decay * decay
        + sparsity * np.sum(np.abs(H))
    )

    # Output pre-activations
    dZ2_T = 2.0 * residual_T * XT_hat * (1.0 - XT_hat)
    dZ2_Y = 2.0 * residual_Y * XY_hat * (1.0 - XY_hat)

    # np.sign(0) == 0 is the L1 subgradient at zero
    dH = dZ2_T @ params["W2_T"] + dZ2_Y @ params["W2_Y"] + sparsity * np.sign(H)
    dZ1 = dH * H * (1.0 - H)

    grads = {
        "W1_T": dZ1.T @ X_T + 2.0 * weight_decay * params["W1_T"],
        "W1_Y": dZ1.T @ X_Y + 2.0 * weight_decay * params["W1_Y"],
        "W2_T": dZ2_T.T @ H + 2.0 * weight_decay * params["W2_T"],
        "W2_Y": dZ2_Y.T @ H + 2.0 * weight_decay * params["W2_Y"],
        "b1": dZ1.sum(axis=0),
        "b2_T": dZ2_T.sum(axis=0),
        "b2_Y": dZ2_Y.sum(axis=0),
    }

    for name in WEIGHTS:
        grads[name] = grads[name] * masks[name]

    return float(loss), grads


def _batch_arrays(
    model: MaskedAutoencoder, batch: Sequence[AugmentedExample]
) -> tuple[Matrix, Matrix, Matrix, Matrix]:
    if not batch:
        raise EmptyInput("batch is empty")

    arrays = stack_examples(batch)
    _check_inputs(model, arrays[0], arrays[1])

    return arrays


def ae_loss(model: MaskedAutoencoder, batch: Sequence[AugmentedExample]) -> float:
    """Reconstruction against the real targets + λ Σ‖W‖²_F + μ Σ‖h‖₁ over the batch."""
    return _loss(model.params, _batch_arrays(model, batch), model.weight_decay, model.sparsity)


def ae_grad(model: MaskedAutoencoder, batch: Sequence[AugmentedExample]) -> ParameterSet:
    _, grads = _loss_and_grad(
        model.params,
        model.masks,
        _batch_arrays(model, batch),
        model.weight_decay,
        model.sparsity,
    )
    return grads


def ae_train(
    examples: Sequence[AugmentedExample],
    layout: AutoencoderLayout,
    cfg: TrainConfig,
    means: Optional[dict[Platform, Vector]] = None,
) -> MaskedAutoencoder:
    if not examples:
        raise EmptyInput("cannot train an autoencoder without examples")

    model = init_autoencoder(layout, cfg)
    arrays = _batch_arrays(model, examples)

    if means is None:
        means = {"T": arrays[2].mean(axis=0), "Y": arrays[3].mean(axis=0)}

    def batch_loss_and_grad(params: ParameterSet, rows: np.ndarray):
        return _loss_and_grad(
            params,
            model.masks,
            tuple(array[rows] for array in arrays),
            cfg.weight_decay,
            cfg.sparsity,
        )

    def full_loss(params: ParameterSet) -> float:
        return _loss(params, arrays, cfg.weight_decay, cfg.sparsity)

    logger.info(
        "Training %s autoencoder (m=%d/%d/%d) on %d examples",
        model.kind,
        layout.m_T,
        layout.m_C,
        layout.m_Y,
        len(examples),
    )

    params, trace = model.run_minibatch_adam(
        model.params, model.masks, len(examples), batch_loss_and_grad, full_loss, cfg
    )

    return replace(model, params=params, means=means, loss_trace=trace)


def ae_predict_cross(
    model: MaskedAutoencoder, known, direction: Direction, substitute
) -> Vector:
    """Reconstruct the unknown platform with its input replaced by `substitute`."""
    known = np.asarray(known, dtype=np.float64)
    substitute = np.asarray(substitute, dtype=np.float64)

    if source_platform(direction) == "T":
        _, _, prediction = ae_forward(model, known, substitute)
    else:
        _, prediction, _ = ae_forward(model, substitute, known)

    return prediction
