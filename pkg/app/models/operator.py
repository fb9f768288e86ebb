from dataclasses import dataclass, field
from typing import NamedTuple, Optional, Tuple
import numpy as np
from app.exceptions import InvalidBallError, InvalidSpecError
from app.models.ball import LpBall


@dataclass(frozen=True)
class SipSpace:
    """
    Plano ℓp liso y estrictamente convexo (1 < p < ∞) con su producto semi-interior único.
    """

    ball: LpBall

    def __post_init__(self):
        if not isinstance(self.ball, LpBall) or self.ball.is_inf or self.ball.p <= 1.0:
            raise InvalidBallError("El producto semi-interior necesita una bola ℓp con 1 < p < ∞")

    @classmethod
    def lp(cls, p: float) -> "SipSpace":
        return cls(LpBall(p))

    @property
    def p(self) -> float:
        return self.ball.p

    @property
    def q(self) -> float:
        return self.ball.q


@dataclass(frozen=True)
class LinearMap2:
    """Aplicación lineal 2×2; `entries` = ((a, b), (c, d)) actúa como [[a, b], [c, d]] @ v."""

    entries: Tuple[Tuple[float, float], Tuple[float, float]]
    matrix: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        M = np.asarray(self.entries, dtype=float)
        if M.shape != (2, 2) or not np.all(np.isfinite(M)):
            raise InvalidSpecError("La matriz debe ser 2×2 con entradas finitas")
        M.setflags(write=False)
        object.__setattr__(self, "entries", tuple(map(tuple, M.tolist())))
        object.__setattr__(self, "matrix", M)

    @classmethod
    def from_flat(cls, a: float, b: float, c: float, d: float) -> "LinearMap2":
        return cls(((a, b), (c, d)))

    def __call__(self, v) -> np.ndarray:
        return np.asarray(v, dtype=float) @ self.matrix.T

    @property
    def det(self) -> float:
        return float(np.linalg.det(self.matrix))

    @property
    def opnorm(self) -> float:
        return float(np.linalg.norm(self.matrix, 2))

    def scaled(self, factor: float) -> "LinearMap2":
        return LinearMap2(tuple(map(tuple, (factor * self.matrix).tolist())))


class NonlinearityWitness(NamedTuple):
    y1: Tuple[float, float]
    y2: Tuple[float, float]
    defect: float


class FormProperties(NamedTuple):
    """Defectos máximos muestreados de la forma Φ(x, y) = [A x, y]."""

    linearity_first: float
    homogeneity_second: float
    additivity_second: float
    symmetry: float


class SipSummary(NamedTuple):
    self_adjoint: bool
    zero_directions: Tuple[float, ...]
    witness: Optional[NonlinearityWitness]
