from typing import Optional, Sequence


class XAssocError(Exception):
    pass


class ShapeMismatch(XAssocError, ValueError):
    pass


class NonFiniteValue(XAssocError, ValueError):
    pass


class EmptyInput(XAssocError, ValueError):
    pass


class InvalidConfig(XAssocError, ValueError):
    pass


class SingularSystem(XAssocError):
    pass


class CorpusTooSmall(XAssocError):
    pass


class CheckpointError(XAssocError):
    pass


class DataLoadError(XAssocError):
    def __init__(self, message: str, path: Optional[str] = None, line: Optional[int] = None):
        self.path = path
        self.line = line

        location = ""
        if path is not None:
            location = f"{path}:{line}: " if line is not None else f"{path}: "

        super().__init__(f"{location}{message}")


class TrainingDiverged(XAssocError):
    def __init__(self, message: str, epoch: int, loss_trace: Sequence[float]):
        self.epoch = epoch
        self.loss_trace = list(loss_trace)

        recent = ", ".join(f"{loss:.6g}" for loss in self.loss_trace[-5:])
        super().__init__(f"{message} (epoch {epoch}, recent losses: [{recent}])")


class SolverDiverged(XAssocError):
    def __init__(self, message: str, objective_trace: Sequence[float]):
        self.objective_trace = list(objective_trace)

        super().__init__(f"{message} after {len(self.objective_trace)} steps")
