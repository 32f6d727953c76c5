import numpy as np
import pytest

from xassoc.exceptions import EmptyInput, InvalidConfig
from xassoc.models import (
    MODEL_KINDS,
    AssociationModel,
    LatentAttribute,
    MaskedAutoencoder,
    MlpMapper,
    MultimodalAutoencoder,
    RidgeTransfer,
    TrainConfig,
    default_model_spec,
    fit_model,
)


class TestRegistry:
    def test_every_kind_registered(self):
        assert {kind: AssociationModel.for_kind(kind) for kind in MODEL_KINDS} == {
            "lr": RidgeTransfer,
            "la": LatentAttribute,
            "mlp": MlpMapper,
            "ma": MultimodalAutoencoder,
            "dca": MaskedAutoencoder,
        }

    def test_unknown_kind(self):
        with pytest.raises(InvalidConfig):
            AssociationModel.for_kind("svm")


class TestDefaultSpecs:
    def test_per_direction(self):
        assert default_model_spec("lr", "t2y").ridge_lambda == 800
        assert default_model_spec("lr", "y2t").ridge_lambda == 150

        la = default_model_spec("la", "y2t")
        assert (la.atoms, la.la_lambda) == (120, 0.02)

        assert default_model_spec("mlp", "y2t").hidden == 120
        assert default_model_spec("mlp", "t2y").train.weight_decay == 0.01
        assert default_model_spec("ma", "t2y").m_C == 90

        dca = default_model_spec("dca", "t2y")
        assert (dca.m_T, dca.m_C, dca.m_Y) == (10, 80, 10)
        assert (dca.train.weight_decay, dca.train.sparsity) == (0.005, 0.0001)


class TestFitModel:
    @pytest.mark.parametrize("kind", MODEL_KINDS)
    @pytest.mark.parametrize("direction", ["t2y", "y2t"])
    def test_fits_and_predicts(self, kind, direction, small_dataset):
        users = small_dataset.users[:40]
        spec = default_model_spec(kind, direction)
        spec = spec.model_copy(
            update={
                "la_iters": 3,
                "train": spec.train.model_copy(update={"epochs": 2}),
            }
        )

        model = fit_model(spec, users)
        assert model.kind == kind

        source = "T" if direction == "t2y" else "Y"
        prediction = model.predict(users[0].on(source), direction)

        expected_dim = small_dataset.dims["Y" if direction == "t2y" else "T"]
        assert prediction.shape == (expected_dim,)
        assert np.all(np.isfinite(prediction))

    def test_ma_ignores_private_blocks(self, small_dataset):
        spec = default_model_spec("ma").model_copy(
            update={"m_T": 5, "m_Y": 5, "train": TrainConfig(epochs=1)}
        )
        model = fit_model(spec, small_dataset.users[:10])

        assert model.layout.is_fully_connected

    def test_no_users(self):
        with pytest.raises(EmptyInput):
            fit_model(default_model_spec("lr"), [])
