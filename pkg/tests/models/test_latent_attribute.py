import numpy as np
import pytest

from xassoc.models import LatentAttribute, la_fit, la_objective, la_predict, sparse_code


def feasible_objective(rng, U_T, U_Y, atoms, lam):
    D_T = rng.normal(size=(U_T.shape[0], atoms))
    D_Y = rng.normal(size=(U_Y.shape[0], atoms))
    D = np.vstack([D_T / np.linalg.norm(D_T, axis=0), D_Y / np.linalg.norm(D_Y, axis=0)])
    S = rng.normal(scale=0.3, size=(atoms, U_T.shape[1]))

    return la_objective(np.vstack([U_T, U_Y]), D, S, lam)


class TestLaFit:
    @pytest.mark.parametrize("seed", range(10))
    def test_solver_soundness(self, seed):
        rng = np.random.default_rng(seed)
        U_T = rng.dirichlet(np.ones(4), size=10).T
        U_Y = rng.dirichlet(np.ones(3), size=10).T

        model = la_fit(U_T, U_Y, atoms=3, la_lambda=0.1, iters=30, seed=seed)
        trace = np.array(model.loss_trace)

        assert len(trace) == 61
        assert np.all(np.diff(trace) <= 1e-10)
        assert np.linalg.norm(model.D_T, axis=0).max() <= 1 + 1e-9
        assert np.linalg.norm(model.D_Y, axis=0).max() <= 1 + 1e-9

        best_random = min(feasible_objective(rng, U_T, U_Y, 3, 0.1) for _ in range(100))
        assert trace[-1] <= best_random

    def test_huge_lambda_kills_codes(self, rng):
        U_T = rng.dirichlet(np.ones(4), size=8).T
        U_Y = rng.dirichlet(np.ones(3), size=8).T
        scale = np.linalg.norm(np.vstack([U_T, U_Y]), axis=0).max()

        model = la_fit(U_T, U_Y, atoms=3, la_lambda=10 * scale, iters=5)

        expected = np.sum(U_T**2) + np.sum(U_Y**2)
        assert model.loss_trace[-1] == pytest.approx(expected, rel=1e-12)

    def test_deterministic(self, rng):
        U_T = rng.dirichlet(np.ones(4), size=8).T
        U_Y = rng.dirichlet(np.ones(3), size=8).T

        first = la_fit(U_T, U_Y, atoms=2, la_lambda=0.05, iters=5, seed=4)
        second = la_fit(U_T, U_Y, atoms=2, la_lambda=0.05, iters=5, seed=4)
        assert np.array_equal(first.D_Y, second.D_Y)


class TestLaPredict:
    def test_recovers_matching_atom(self):
        D_Y = np.array([[0.6, 0.0, 0.8], [0.8, 1.0, 0.0]])
        model = LatentAttribute(D_T=np.eye(3), D_Y=D_Y, la_lambda=1e-9)

        s = sparse_code(np.array([0.0, 1.0, 0.0]), model.D_T, model.la_lambda)
        np.testing.assert_allclose(s, [0.0, 1.0, 0.0], atol=1e-6)

        prediction = la_predict(model, [0.0, 1.0, 0.0], "T")
        np.testing.assert_allclose(prediction, D_Y[:, 1], atol=1e-6)

    def test_huge_lambda_predicts_zero(self):
        model = LatentAttribute(D_T=np.eye(3), D_Y=np.ones((2, 3)) / 2, la_lambda=1e6)
        assert la_predict(model, [0.2, 0.3, 0.5], "T").tolist() == [0.0, 0.0]

    def test_serves_both_directions(self, rng):
        U_T = rng.dirichlet(np.ones(4), size=8).T
        U_Y = rng.dirichlet(np.ones(3), size=8).T
        model = la_fit(U_T, U_Y, atoms=3, la_lambda=0.05, iters=5)

        assert model.predict(U_T[:, 0], "t2y").shape == (3,)
        assert model.predict(U_Y[:, 0], "y2t").shape == (4,)

    def test_deterministic(self):
        model = LatentAttribute(D_T=np.eye(2), D_Y=np.eye(2), la_lambda=0.01)
        assert la_predict(model, [0.3, 0.7], "T").tolist() == la_predict(model, [0.3, 0.7], "T").tolist()
