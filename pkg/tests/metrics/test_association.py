import numpy as np
import pytest
from dirty_equals import IsApprox

from xassoc.exceptions import EmptyInput, ShapeMismatch
from xassoc.metrics import mae_rmse, per_user_errors


class TestMaeRmse:
    def test_hand_case(self):
        report = mae_rmse([[0.4, 0.6]], [[0.2, 0.8]])

        assert report.model_dump() == {
            "format_version": 1,
            "report": "assoc",
            "platform": "Y",
            "mae": IsApprox(0.2, delta=1e-12),
            "rmse": IsApprox(0.2, delta=1e-12),
            "n_users": 1,
            "dim": 2,
            "residuals": {
                "min_mae": IsApprox(0.2, delta=1e-12),
                "median_mae": IsApprox(0.2, delta=1e-12),
                "max_mae": IsApprox(0.2, delta=1e-12),
                "min_rmse": IsApprox(0.2, delta=1e-12),
                "median_rmse": IsApprox(0.2, delta=1e-12),
                "max_rmse": IsApprox(0.2, delta=1e-12),
            },
        }

    def test_averaged_per_user(self):
        preds = [[1.0, 0.0], [0.5, 0.5]]
        truths = [[0.0, 1.0], [0.5, 0.5]]

        report = mae_rmse(preds, truths, platform="T")

        assert report.mae == pytest.approx(0.5)
        assert report.rmse == pytest.approx(0.5)
        assert report.platform == "T"

    def test_rmse_never_below_mae(self, rng):
        for _ in range(100):
            dim = int(rng.integers(2, 20))
            users = int(rng.integers(1, 10))
            preds = rng.dirichlet(np.ones(dim), size=users)
            truths = rng.dirichlet(np.ones(dim), size=users)

            mae, rmse = per_user_errors(preds, truths)

            assert np.all(rmse >= mae - 1e-15)

    def test_perfect_prediction(self):
        report = mae_rmse([[0.1, 0.9]], [[0.1, 0.9]])

        assert (report.mae, report.rmse) == (0.0, 0.0)

    def test_dimension_checked(self):
        with pytest.raises(ShapeMismatch):
            mae_rmse([[0.5, 0.5]], [[0.5, 0.5]], K=3)

        with pytest.raises(ShapeMismatch):
            mae_rmse([[0.5, 0.5]], [[0.5, 0.5], [0.5, 0.5]])

    def test_empty(self):
        with pytest.raises(EmptyInput):
            mae_rmse([], [])
