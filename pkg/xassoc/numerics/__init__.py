from .adam import adam_update, init_adam
from .kernel import as_matrix, as_vector, numerical_gradient, sigmoid
from .params import flatten, unflatten
from .rng import RNG_ALGORITHM, derive_seed, rng_stream
from .types import AdamState, Matrix, ParameterSet, Vector
