import numpy as np

from .types import ParameterSet, Vector


def flatten(params: ParameterSet, order: list[str]) -> Vector:
    return np.concatenate([params[name].ravel() for name in order])


def unflatten(flat: Vector, like: ParameterSet, order: list[str]) -> ParameterSet:
    params: ParameterSet = {}
    offset = 0

    for name in order:
        shape = like[name].shape
        size = like[name].size
        params[name] = flat[offset : offset + size].reshape(shape).copy()
        offset += size

    return params
