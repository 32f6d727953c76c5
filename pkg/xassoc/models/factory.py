import logging
from typing import Sequence

import numpy as np

from xassoc.exceptions import EmptyInput
from xassoc.numerics import derive_seed
from xassoc.representations import AlignedUser, augment_training_set, platform_mean
from xassoc.types import source_platform, target_platform

from .autoencoder import ae_train
from .base import AssociationModel
from .latent_attribute import la_fit
from .mlp import mlp_fit
from .ridge import ridge_fit
from .types import AutoencoderLayout, ModelSpec

logger = logging.getLogger(__name__)


def user_columns(users: Sequence[AlignedUser], platform) -> np.ndarray:
    """Topics x users matrix for one platform."""
    return np.stack([user.on(platform) for user in users], axis=1)


def fit_model(spec: ModelSpec, train_users: Sequence[AlignedUser]) -> AssociationModel:
    if not train_users:
        raise EmptyInput("no training users")

    src = source_platform(spec.direction)
    dst = target_platform(spec.direction)
    seed = spec.train.seed

    logger.info(
        "Fitting %s (%s) on %d users", spec.kind, spec.direction, len(train_users)
    )

    if spec.kind == "lr":
        return ridge_fit(
            user_columns(train_users, src),
            user_columns(train_users, dst),
            spec.ridge_lambda,
            direction=spec.direction,
        )

    if spec.kind == "la":
        return la_fit(
            user_columns(train_users, "T"),
            user_columns(train_users, "Y"),
            spec.atoms,
            spec.la_lambda,
            iters=spec.la_iters,
            seed=seed,
        )

    if spec.kind == "mlp":
        return mlp_fit(
            user_columns(train_users, src),
            user_columns(train_users, dst),
            spec.hidden,
            spec.train,
            direction=spec.direction,
        )

    first = train_users[0]
    m_T, m_Y = (0, 0) if spec.kind == "ma" else (spec.m_T, spec.m_Y)
    layout = AutoencoderLayout(
        n_T=first.twitter.dim, n_Y=first.youtube.dim, m_T=m_T, m_C=spec.m_C, m_Y=m_Y
    )

    means = {"T": platform_mean(train_users, "T"), "Y": platform_mean(train_users, "Y")}
    examples = augment_training_set(
        train_users, means["T"], means["Y"], seed=derive_seed(seed, "augment")
    )

    return ae_train(examples, layout, spec.train, means=means)
