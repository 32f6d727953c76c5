import logging
from typing import Callable

import numpy as np

from xassoc.exceptions import TrainingDiverged
from xassoc.numerics import (
    ParameterSet,
    adam_update,
    derive_seed,
    flatten,
    init_adam,
    rng_stream,
    unflatten,
)

from .types import TrainConfig

logger = logging.getLogger(__name__)

BatchLossAndGrad = Callable[[ParameterSet, np.ndarray], tuple[float, ParameterSet]]


class MinibatchAdamMixin:
    @classmethod
    def init_uniform(
        cls, shapes: dict[str, tuple[int, ...]], masks: ParameterSet, cfg: TrainConfig
    ) -> ParameterSet:
        """Weights uniform in ±init_scale, biases (1-D) zero, then masked."""
        rng = rng_stream(derive_seed(cfg.seed, "init"))
        params: ParameterSet = {}

        for name, shape in shapes.items():
            if len(shape) == 1:
                params[name] = np.zeros(shape)
                continue

            values = rng.uniform(-cfg.init_scale, cfg.init_scale, size=shape)
            if name in masks:
                values = values * masks[name]

            params[name] = values

        return params

    @classmethod
    def run_minibatch_adam(
        cls,
        params: ParameterSet,
        masks: ParameterSet,
        n_examples: int,
        batch_loss_and_grad: BatchLossAndGrad,
        full_loss: Callable[[ParameterSet], float],
        cfg: TrainConfig,
    ) -> tuple[ParameterSet, list[float]]:
        """Minibatch Adam over `n_examples`; returns final params and a per-epoch loss trace.

        The trace holds the mean per-example objective over all examples, first
        at initialisation and then after every epoch.
        """
        order = list(params)
        flat = flatten(params, order)
        flat_mask = flatten(
            {name: masks.get(name, np.ones_like(params[name])) for name in order},
            order,
        )

        state = init_adam(
            flat.size, lr=cfg.lr, beta1=cfg.beta1, beta2=cfg.beta2, epsilon=cfg.epsilon
        )
        shuffle = rng_stream(derive_seed(cfg.seed, "shuffle"))

        current = params
        trace = [full_loss(current) / n_examples]

        for epoch in range(1, cfg.epochs + 1):
            permutation = shuffle.permutation(n_examples)

            for start in range(0, n_examples, cfg.batch_size):
                batch = permutation[start : start + cfg.batch_size]
                loss, grads = batch_loss_and_grad(current, batch)

                if not np.isfinite(loss):
                    raise TrainingDiverged("minibatch loss is not finite", epoch, trace)

                flat, state = adam_update(flat, flatten(grads, order) * flat_mask, state)
                flat = flat * flat_mask
                current = unflatten(flat, params, order)

            epoch_loss = full_loss(current) / n_examples
            if not np.isfinite(epoch_loss):
                raise TrainingDiverged("epoch loss is not finite", epoch, trace)

            trace.append(epoch_loss)

            if epoch % cfg.log_every == 0 or epoch == cfg.epochs:
                logger.info("Epoch %d/%d loss %.6f", epoch, cfg.epochs, epoch_loss)

        return current, trace
