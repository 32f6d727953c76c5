from dataclasses import dataclass

from pydantic import BaseModel


@dataclass(frozen=True)
class CandidateSet:
    user_id: str
    # groundtruth first, then sampled distractors
    candidates: tuple[str, ...]
    seed: int


@dataclass(frozen=True)
class RankedList:
    """(video_id, score) pairs, score descending, ties by ascending video_id."""

    items: tuple[tuple[str, float], ...]

    def video_ids(self) -> list[str]:
        return [video_id for video_id, _ in self.items]

    def __len__(self) -> int:
        return len(self.items)


@dataclass(frozen=True)
class Recommendation:
    user_id: str
    ranked: RankedList
    k: int
    seed: int


class RankedItemLine(BaseModel):
    video: str
    score: float


class RecommendationLine(BaseModel):
    user: str
    ranked: list[RankedItemLine]
    k: int
    seed: int
