import numpy as np

from xassoc.exceptions import ShapeMismatch

from .types import AdamState, Vector


def init_adam(
    size: int,
    lr: float = 0.001,
    beta1: float = 0.9,
    beta2: float = 0.999,
    epsilon: float = 1e-8,
) -> AdamState:
    return AdamState(
        m=np.zeros(size),
        v=np.zeros(size),
        t=0,
        lr=lr,
        beta1=beta1,
        beta2=beta2,
        epsilon=epsilon,
    )


def adam_update(params: Vector, grads: Vector, state: AdamState) -> tuple[Vector, AdamState]:
    """One bias-corrected Adam step over a flat parameter vector.

    Masking is the caller's job: zero the masked gradients before calling and
    re-apply the mask to the returned parameters.
    """
    if params.shape != grads.shape:
        raise ShapeMismatch(f"params {params.shape} and grads {grads.shape} differ")

    if state.m.shape != params.shape or state.v.shape != params.shape:
        raise ShapeMismatch(
            f"Adam moments {state.m.shape} do not track params {params.shape}"
        )

    t = state.t + 1
    m = state.beta1 * state.m + (1.0 - state.beta1) * grads
    v = state.beta2 * state.v + (1.0 - state.beta2) * (grads * grads)

    m_hat = m / (1.0 - state.beta1**t)
    v_hat = v / (1.0 - state.beta2**t)

    updated = params - state.lr * m_hat / (np.sqrt(v_hat) + state.epsilon)

    return updated, AdamState(
        m=m,
        v=v,
        t=t,
        lr=state.lr,
        beta1=state.beta1,
        beta2=state.beta2,
        epsilon=state.epsilon,
    )
