import numpy as np
import pytest

from xassoc.models import AutoencoderLayout, TrainConfig, init_autoencoder
from xassoc.representations import AugmentedExample


def example(x_T, x_Y, t_T=None, t_Y=None, kind="real_both") -> AugmentedExample:
    x_T = np.asarray(x_T, dtype=np.float64)
    x_Y = np.asarray(x_Y, dtype=np.float64)

    return AugmentedExample(
        user_id="u",
        kind=kind,
        input_T=x_T,
        input_Y=x_Y,
        target_T=x_T if t_T is None else np.asarray(t_T, dtype=np.float64),
        target_Y=x_Y if t_Y is None else np.asarray(t_Y, dtype=np.float64),
    )


def random_batch(rng, n_T: int, n_Y: int, size: int) -> list[AugmentedExample]:
    return [
        example(
            rng.dirichlet(np.ones(n_T)),
            rng.dirichlet(np.ones(n_Y)),
            rng.dirichlet(np.ones(n_T)),
            rng.dirichlet(np.ones(n_Y)),
        )
        for _ in range(size)
    ]


@pytest.fixture
def small_layout() -> AutoencoderLayout:
    return AutoencoderLayout(n_T=6, n_Y=8, m_T=2, m_C=3, m_Y=2)


@pytest.fixture
def random_model(small_layout):
    cfg = TrainConfig(init_scale=0.5, weight_decay=0.01, sparsity=0.001, seed=3)
    return init_autoencoder(small_layout, cfg)
