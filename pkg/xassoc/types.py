from typing import Literal

Platform = Literal["T", "Y"]
Direction = Literal["t2y", "y2t"]
SubstituteMode = Literal["mean", "zeros"]

PLATFORMS: tuple[Platform, Platform] = ("T", "Y")
DIRECTIONS: tuple[Direction, Direction] = ("t2y", "y2t")


def source_platform(direction: Direction) -> Platform:
    return "T" if direction == "t2y" else "Y"


def target_platform(direction: Direction) -> Platform:
    return "Y" if direction == "t2y" else "T"


def other_platform(platform: Platform) -> Platform:
    return "Y" if platform == "T" else "T"
