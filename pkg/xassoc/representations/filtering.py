import logging

from xassoc.exceptions import InvalidConfig

from .types import Dataset, InteractionSet

logger = logging.getLogger(__name__)


def filter_dataset(
    dataset: Dataset, min_user_interactions: int = 3, min_video_consumers: int = 3
) -> Dataset:
    """Drop sparse users and videos alternately until nothing else falls below a threshold."""
    if min_user_interactions < 1 or min_video_consumers < 1:
        raise InvalidConfig("filter thresholds must be at least 1")

    users = {user.user_id for user in dataset.users}
    videos = {video.video_id for video in dataset.videos}
    rounds = 0

    while True:
        rounds += 1
        edges = {
            user: dataset.interactions.videos_of(user) & videos for user in users
        }

        kept_users = {
            user for user, seen in edges.items() if len(seen) >= min_user_interactions
        }

        consumers: dict[str, int] = {}
        for user in kept_users:
            for video in edges[user]:
                consumers[video] = consumers.get(video, 0) + 1

        kept_videos = {
            video
            for video in videos
            if consumers.get(video, 0) >= min_video_consumers
        }

        if kept_users == users and kept_videos == videos:
            break

        users, videos = kept_users, kept_videos

    if not users or not videos:
        logger.warning(
            "Filtering with thresholds (%d, %d) left an empty dataset",
            min_user_interactions,
            min_video_consumers,
        )
    else:
        logger.info(
            "Filtering kept %d/%d users and %d/%d videos after %d rounds",
            len(users),
            len(dataset.users),
            len(videos),
            len(dataset.videos),
            rounds,
        )

    return Dataset(
        users=[user for user in dataset.users if user.user_id in users],
        videos=[video for video in dataset.videos if video.video_id in videos],
        interactions=InteractionSet(
            by_user={
                user: dataset.interactions.videos_of(user) & videos
                for user in sorted(users)
            }
        ),
        dims=dict(dataset.dims),
        provenance={
            **dataset.provenance,
            "filter": {
                "min_user_interactions": min_user_interactions,
                "min_video_consumers": min_video_consumers,
            },
        },
    )
