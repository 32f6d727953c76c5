from collections import Counter

import numpy as np
import pytest

from tests.utils import user
from xassoc.exceptions import EmptyInput
from xassoc.representations import (
    augment_training_set,
    derive_user_repr_from_videos,
    platform_mean,
    stack_examples,
)


def simplex_users(n: int, rng):
    return [
        user(f"u{index}", rng.dirichlet(np.ones(3)), rng.dirichlet(np.ones(4)))
        for index in range(n)
    ]


class TestPlatformMean:
    def test_single_user(self):
        only = user("a", [0.2, 0.8], [1.0, 0.0])
        assert platform_mean([only], "T").tolist() == [0.2, 0.8]

    def test_two_users(self):
        users = [user("a", [0.2, 0.8], [1.0]), user("b", [0.4, 0.6], [1.0])]
        np.testing.assert_allclose(platform_mean(users, "T"), [0.3, 0.7])

    def test_stays_on_simplex(self, rng):
        assert platform_mean(simplex_users(25, rng), "Y").sum() == pytest.approx(1.0, abs=1e-9)

    def test_empty(self):
        with pytest.raises(EmptyInput):
            platform_mean([], "T")


class TestDeriveFromVideos:
    def test_single_video(self):
        assert derive_user_repr_from_videos([np.array([0.3, 0.7])]).tolist() == [0.3, 0.7]

    def test_average(self):
        result = derive_user_repr_from_videos([np.array([1.0, 0.0]), np.array([0.0, 1.0])])
        assert result.tolist() == [0.5, 0.5]

    def test_empty(self):
        with pytest.raises(EmptyInput):
            derive_user_repr_from_videos([])


class TestAugmentTrainingSet:
    def test_thirds(self, rng):
        users = simplex_users(9, rng)
        examples = augment_training_set(
            users, platform_mean(users, "T"), platform_mean(users, "Y"), seed=0
        )

        assert Counter(e.kind for e in examples) == {
            "real_both": 3,
            "real_T_avg_Y": 3,
            "avg_T_real_Y": 3,
        }

    def test_remainder_goes_to_first_group(self, rng):
        users = simplex_users(10, rng)
        examples = augment_training_set(
            users, platform_mean(users, "T"), platform_mean(users, "Y"), seed=0
        )

        assert Counter(e.kind for e in examples) == {
            "real_T_avg_Y": 4,
            "avg_T_real_Y": 3,
            "real_both": 3,
        }

    def test_targets_are_real(self, rng):
        users = simplex_users(12, rng)
        mean_T, mean_Y = platform_mean(users, "T"), platform_mean(users, "Y")
        by_id = {u.user_id: u for u in users}

        for example in augment_training_set(users, mean_T, mean_Y, seed=4):
            source = by_id[example.user_id]
            assert np.array_equal(example.target_T, source.twitter.entries)
            assert np.array_equal(example.target_Y, source.youtube.entries)

            if example.kind == "real_T_avg_Y":
                assert np.array_equal(example.input_Y, mean_Y)
                assert np.array_equal(example.input_T, source.twitter.entries)
            elif example.kind == "avg_T_real_Y":
                assert np.array_equal(example.input_T, mean_T)
                assert np.array_equal(example.input_Y, source.youtube.entries)

    def test_every_user_once(self, rng):
        users = simplex_users(11, rng)
        examples = augment_training_set(
            users, platform_mean(users, "T"), platform_mean(users, "Y"), seed=1
        )

        assert sorted(e.user_id for e in examples) == sorted(u.user_id for u in users)

    def test_deterministic(self, rng):
        users = simplex_users(15, rng)
        means = platform_mean(users, "T"), platform_mean(users, "Y")

        first = augment_training_set(users, *means, seed=9)
        second = augment_training_set(users, *means, seed=9)
        assert [(e.user_id, e.kind) for e in first] == [(e.user_id, e.kind) for e in second]

    def test_too_few_users_warns(self, rng, caplog):
        users = simplex_users(2, rng)
        with caplog.at_level("WARNING", logger="xassoc"):
            examples = augment_training_set(
                users, platform_mean(users, "T"), platform_mean(users, "Y")
            )

        assert [e.kind for e in examples] == ["real_both", "real_both"]
        assert "augmented" in caplog.text

    def test_stack(self, rng):
        users = simplex_users(6, rng)
        examples = augment_training_set(
            users, platform_mean(users, "T"), platform_mean(users, "Y")
        )
        X_T, X_Y, T_T, T_Y = stack_examples(examples)

        assert (X_T.shape, X_Y.shape, T_T.shape, T_Y.shape) == ((6, 3), (6, 4), (6, 3), (6, 4))
