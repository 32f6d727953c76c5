from typing import ClassVar

from xassoc.exceptions import InvalidConfig
from xassoc.numerics import Vector
from xassoc.types import Direction, SubstituteMode

from .types import AssociationModelProtocol, CheckpointDocument, ModelKind


class AssociationModel(AssociationModelProtocol):
    kind: ClassVar[ModelKind]

    registry: ClassVar[dict[str, type["AssociationModel"]]] = {}

    def __init_subclass__(cls) -> None:
        if kind := cls.__dict__.get("kind"):
            AssociationModel.registry[kind] = cls

        return super().__init_subclass__()

    @classmethod
    def for_kind(cls, kind: str) -> type["AssociationModel"]:
        try:
            return cls.registry[kind]
        except KeyError:
            raise InvalidConfig(
                f"unknown model kind {kind!r}; expected one of {sorted(cls.registry)}"
            )

    def predict(
        self,
        u_src: Vector,
        direction: Direction,
        substitute: SubstituteMode = "mean",
    ) -> Vector:
        raise NotImplementedError(f"{type(self).__name__}.predict not implemented")

    def to_checkpoint(self) -> CheckpointDocument:
        raise NotImplementedError(f"{type(self).__name__}.to_checkpoint not implemented")

    @classmethod
    def from_checkpoint(cls, document: CheckpointDocument) -> "AssociationModel":
        raise NotImplementedError(f"{cls.__name__}.from_checkpoint not implemented")


class DirectionalModelMixin:
    """For baselines that learn a single mapping and only serve that direction."""

    direction: Direction

    def check_direction(self, direction: Direction):
        if direction != self.direction:
            raise InvalidConfig(
                f"{type(self).__name__} was fitted for {self.direction}, not {direction}"
            )
