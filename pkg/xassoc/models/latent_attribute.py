"""Latent-attribute association: two dictionaries sharing one sparse code.

    min ‖U_T − D_T S‖²_F + ‖U_Y − D_Y S‖²_F + λ‖S‖₁   s.t. every column of D_T, D_Y has norm ≤ 1

Solved by alternating a code step (proximal gradient / ISTA on S) with a
dictionary step (projected gradient on D). Both use step 1/L, so each half
step can only lower the objective.
"""
import logging
from dataclasses import dataclass, field
from typing import ClassVar

import numpy as np

from xassoc.exceptions import CheckpointError, InvalidConfig, ShapeMismatch, SolverDiverged
from xassoc.numerics import Matrix, Vector, as_matrix, as_vector, rng_stream
from xassoc.types import Direction, Platform, SubstituteMode, source_platform

from .base import AssociationModel
from .types import CheckpointDocument, ModelKind, matrix_payload, payload_array

logger = logging.getLogger(__name__)

MONOTONE_SLACK = 1e-10


@dataclass
class LatentAttribute(AssociationModel):
    kind: ClassVar[ModelKind] = "la"

    D_T: Matrix
    D_Y: Matrix
    la_lambda: float
    loss_trace: list[float] = field(default_factory=list)

    @property
    def atoms(self) -> int:
        return self.D_T.shape[1]

    def dictionary(self, platform: Platform) -> Matrix:
        return self.D_T if platform == "T" else self.D_Y

    def predict(
        self,
        u_src: Vector,
        direction: Direction,
        substitute: SubstituteMode = "mean",
    ) -> Vector:
        return la_predict(self, u_src, source_platform(direction))

    def to_checkpoint(self) -> CheckpointDocument:
        return CheckpointDocument(
            kind=self.kind,
            layout={"n_T": self.D_T.shape[0], "n_Y": self.D_Y.shape[0], "m": self.atoms},
            weights={"D_T": matrix_payload(self.D_T), "D_Y": matrix_payload(self.D_Y)},
            hyper={"lambda": self.la_lambda, "objective_trace": list(self.loss_trace)},
        )

    @classmethod
    def from_checkpoint(cls, document: CheckpointDocument) -> "LatentAttribute":
        try:
            D_T = payload_array(document.weights["D_T"])
            D_Y = payload_array(document.weights["D_Y"])
            la_lambda = document.hyper["lambda"]
        except KeyError as exc:
            raise CheckpointError(f"checkpoint is missing {exc.args[0]}")

        if D_T.shape[1] != D_Y.shape[1]:
            raise CheckpointError(
                f"D_T has {D_T.shape[1]} atoms but D_Y has {D_Y.shape[1]}"
            )

        return cls(
            D_T=D_T,
            D_Y=D_Y,
            la_lambda=la_lambda,
            loss_trace=list(document.hyper.get("objective_trace", [])),
        )


def soft_threshold(values: np.ndarray, threshold: float) -> np.ndarray:
    return np.sign(values) * np.maximum(np.abs(values) - threshold, 0.0)


def project_columns(D: Matrix) -> Matrix:
    """Scale down every column whose L2 norm exceeds 1."""
    norms = np.linalg.norm(D, axis=0)
    return D / np.maximum(norms, 1.0)


def la_objective(U: Matrix, D: Matrix, S: Matrix, la_lambda: float) -> float:
    residual = U - D @ S
    return float(np.sum(residual**2) + la_lambda * np.sum(np.abs(S)))


def _lipschitz(A: Matrix) -> float:
    return 2.0 * float(np.linalg.norm(A, 2)) ** 2


def _code_step(U: Matrix, D: Matrix, S: Matrix, la_lambda: float, steps: int) -> Matrix:
    L = _lipschitz(D)
    if L == 0.0:
        return np.zeros_like(S)

    for _ in range(steps):
        gradient = 2.0 * D.T @ (D @ S - U)
        S = soft_threshold(S - gradient / L, la_lambda / L)

    return S


def _dictionary_step(U: Matrix, D: Matrix, S: Matrix, n_T: int, steps: int) -> Matrix:
    L = _lipschitz(S)
    if L == 0.0:
        return D

    for _ in range(steps):
        gradient = 2.0 * (D @ S - U) @ S.T
        D = D - gradient / L
        D = np.vstack([project_columns(D[:n_T]), project_columns(D[n_T:])])

    return D


def la_fit(
    U_T: Matrix,
    U_Y: Matrix,
    atoms: int,
    la_lambda: float,
    iters: int = 50,
    seed: int = 0,
    code_steps: int = 50,
    dictionary_steps: int = 20,
) -> LatentAttribute:
    """Fit D_T, D_Y on users-as-columns matrices; the trace records every half step."""
    U_T = as_matrix(U_T, name="U_T")
    U_Y = as_matrix(U_Y, name="U_Y")

    if U_T.shape[1] != U_Y.shape[1]:
        raise ShapeMismatch(f"U_T has {U_T.shape[1]} users but U_Y has {U_Y.shape[1]}")

    if atoms < 1:
        raise InvalidConfig("need at least one latent attribute")

    n_T = U_T.shape[0]
    U = np.vstack([U_T, U_Y])

    rng = rng_stream(seed)
    D_T = rng.normal(size=(n_T, atoms))
    D_Y = rng.normal(size=(U_Y.shape[0], atoms))
    D = np.vstack(
        [D_T / np.linalg.norm(D_T, axis=0), D_Y / np.linalg.norm(D_Y, axis=0)]
    )
    S = np.zeros((atoms, U.shape[1]))

    trace = [la_objective(U, D, S, la_lambda)]

    def record(value: float):
        if value > trace[-1] + MONOTONE_SLACK:
            trace.append(value)
            raise SolverDiverged("latent-attribute objective increased", trace)

        trace.append(value)

    for iteration in range(iters):
        S = _code_step(U, D, S, la_lambda, code_steps)
        record(la_objective(U, D, S, la_lambda))

        D = _dictionary_step(U, D, S, n_T, dictionary_steps)
        record(la_objective(U, D, S, la_lambda))

        logger.debug("LA iteration %d objective %.10g", iteration, trace[-1])

    logger.info("Latent attributes fitted (m=%d): objective %.6g", atoms, trace[-1])

    return LatentAttribute(
        D_T=D[:n_T], D_Y=D[n_T:], la_lambda=la_lambda, loss_trace=trace
    )


def sparse_code(
    u: Vector, D: Matrix, la_lambda: float, max_iter: int = 5000, tol: float = 1e-12
) -> Vector:
    """argmin_s ‖u − D s‖² + λ‖s‖₁ by accelerated proximal gradient (FISTA)."""
    L = _lipschitz(D)
    s = np.zeros(D.shape[1])
    if L == 0.0:
        return s

    z = s.copy()
    t = 1.0

    for _ in range(max_iter):
        previous = s
        s = soft_threshold(z - 2.0 * D.T @ (D @ z - u) / L, la_lambda / L)

        t_next = (1.0 + np.sqrt(1.0 + 4.0 * t * t)) / 2.0
        z = s + ((t - 1.0) / t_next) * (s - previous)
        t = t_next

        if np.max(np.abs(s - previous)) < tol:
            break

    return s


def la_predict(model: LatentAttribute, u_src, src_platform: Platform) -> Vector:
    D_src = model.dictionary(src_platform)
    D_dst = model.dictionary("Y" if src_platform == "T" else "T")

    u_src = as_vector(u_src, dim=D_src.shape[0], name="u_src")
    s = sparse_code(u_src, D_src, model.la_lambda)

    return D_dst @ s
