"""Directional experiments on full-size synthetic data. Run with `pytest -m slow`."""
import numpy as np
import pytest

from xassoc.cli.pipeline import evaluate_association
from xassoc.metrics import measurement_table
from xassoc.models import default_model_spec, fit_model
from xassoc.numerics import derive_seed
from xassoc.representations import SyntheticConfig, filter_dataset, gen_synthetic, split_train_test

SEEDS = range(6)

pytestmark = pytest.mark.slow


def mean_mae(disparity: float, kinds: list[str]) -> dict[str, float]:
    scores = {kind: [] for kind in kinds}

    for seed in SEEDS:
        dataset = filter_dataset(gen_synthetic(SyntheticConfig(disparity=disparity, seed=seed)))
        train, test = split_train_test(dataset, 0.8, seed=derive_seed(seed, "split"))

        for kind in kinds:
            spec = default_model_spec(kind, "t2y")
            spec = spec.model_copy(update={"train": spec.train.model_copy(update={"seed": seed})})

            model = fit_model(spec, train.users)
            scores[kind].append(evaluate_association(model, test.users, "t2y").mae)

    return {kind: float(np.mean(values)) for kind, values in scores.items()}


def test_nonlinear_models_beat_ridge_and_disparity_helps():
    mae = mean_mae(0.3, ["lr", "mlp", "ma", "dca"])

    assert mae["dca"] <= mae["ma"]
    for kind in ("mlp", "ma", "dca"):
        assert mae[kind] <= 0.95 * mae["lr"]


def test_private_blocks_harmless_without_disparity():
    mae = mean_mae(0.0, ["ma", "dca"])

    assert abs(mae["dca"] - mae["ma"]) <= 0.02 * mae["ma"]


def test_groups_scatter_on_the_other_platform():
    dataset = gen_synthetic(SyntheticConfig(disparity=0.8, seed=0))

    table = measurement_table(dataset, clusters=10, n_random=200, seed=0)

    assert table.row("T", "Y").ratio >= 0.9
    assert table.row("T", "T").ratio <= 0.8
