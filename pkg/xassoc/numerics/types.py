from dataclasses import dataclass

import numpy as np
import numpy.typing as npt

Vector = npt.NDArray[np.float64]
Matrix = npt.NDArray[np.float64]

# Named parameter tensors, e.g. {"W1_T": Matrix, "b1": Vector}
ParameterSet = dict[str, npt.NDArray[np.float64]]


@dataclass(frozen=True)
class AdamState:
    """Moments and step counter for one flat parameter vector.

    Owned by a single training loop; `adam_update` returns a new state rather
    than mutating this one.
    """

    m: Vector
    v: Vector
    t: int = 0
    lr: float = 0.001
    beta1: float = 0.9
    beta2: float = 0.999
    epsilon: float = 1e-8
