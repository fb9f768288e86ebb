"""
Tipos del plano normado: bolas unidad, rectas y caras de contacto.

Todos los tipos son inmutables; las bolas poligonales precalculan sus
funcionales de arista al construirse.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Literal, NamedTuple, Optional, Tuple, Union
import numpy as np
from scipy.spatial import ConvexHull
from app.exceptions import InvalidBallError, ZeroVectorError

INF = "inf"  # etiqueta de p = ∞; nunca se usa como float en la aritmética


class Tangency(str, Enum):
    EXTERNAL = "external"
    INTERNAL = "internal"
    NONE = "none"


class BallProperties(NamedTuple):
    strictly_convex: bool
    smooth: bool


class UnitBall:
    """Clase base de las bolas unidad (cuerpo convexo centrado en el origen)."""

    kind: str

    def describe(self) -> str:
        raise NotImplementedError


@dataclass(frozen=True)
class LpBall(UnitBall):
    """
    Bola de la familia ℓp.
    - `p`: exponente real >= 1, o la etiqueta "inf" para la norma del máximo.
    """

    p: Union[float, Literal["inf"]]
    kind: str = field(default="lp", init=False)

    def __post_init__(self):
        if self.p == INF:
            return
        if isinstance(self.p, str):
            raise InvalidBallError(f"Exponente p no válido: {self.p!r}")
        p = float(self.p)
        if p == float("inf"):
            # float("inf") se normaliza a la etiqueta
            object.__setattr__(self, "p", INF)
            return
        if not np.isfinite(p) or p < 1:
            raise InvalidBallError(f"El exponente p debe ser >= 1, recibido {self.p}")
        object.__setattr__(self, "p", p)

    @property
    def is_inf(self) -> bool:
        return self.p == INF

    @property
    def q(self) -> Union[float, Literal["inf"]]:
        """Exponente dual: 1/p + 1/q = 1."""
        if self.is_inf:
            return 1.0
        if self.p == 1.0:
            return INF
        return self.p / (self.p - 1.0)

    def describe(self) -> str:
        return "lp:inf" if self.is_inf else f"lp:{self.p:g}"


@dataclass(frozen=True)
class PolygonBall(UnitBall):
    """
    Bola poligonal simétrica respecto al origen.
    - `vertices`: en sentido antihorario, estrictamente convexa, con V[i + k/2] = −V[i].
    - Los funcionales de arista n_e / c_e permiten evaluar la norma como un máximo.
    """

    vertices: Tuple[Tuple[float, float], ...]
    kind: str = field(default="polygon", init=False)
    functionals: np.ndarray = field(init=False, repr=False, compare=False)
    vertex_array: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        V = np.asarray(self.vertices, dtype=float)
        if V.ndim != 2 or V.shape[1] != 2:
            raise InvalidBallError("Los vértices deben ser pares (x, y)")
        if not np.all(np.isfinite(V)):
            raise InvalidBallError("Los vértices deben ser finitos")
        k = len(V)
        if k < 4:
            raise InvalidBallError(f"Un polígono unidad necesita al menos 4 vértices, recibidos {k}")
        if k % 2:
            raise InvalidBallError("Un polígono simétrico tiene un número par de vértices")

        scale = float(np.abs(V).max())
        tol = 1e-9 * max(1.0, scale)
        if np.abs(V[k // 2:] + V[: k // 2]).max() > tol:
            raise InvalidBallError("El polígono no es simétrico respecto al origen")

        E = np.roll(V, -1, axis=0) - V
        turns = E[:, 0] * np.roll(E, -1, axis=0)[:, 1] - E[:, 1] * np.roll(E, -1, axis=0)[:, 0]
        area2 = float(np.sum(V[:, 0] * np.roll(V, -1, axis=0)[:, 1] - V[:, 1] * np.roll(V, -1, axis=0)[:, 0]))
        if area2 <= 0:
            raise InvalidBallError("Los vértices deben ir en sentido antihorario")
        if np.any(turns <= tol * scale):
            raise InvalidBallError("El polígono no es estrictamente convexo (vértices alineados o giro negativo)")

        # Normal exterior (dy, −dx) de cada arista y su distancia c_e al origen
        normals = np.column_stack([E[:, 1], -E[:, 0]])
        offsets = np.einsum("ij,ij->i", normals, V)
        if np.any(offsets <= 0):
            raise InvalidBallError("El origen debe estar estrictamente dentro del polígono")

        object.__setattr__(self, "vertices", tuple((float(x), float(y)) for x, y in V))
        object.__setattr__(self, "vertex_array", V)
        object.__setattr__(self, "functionals", normals / offsets[:, None])

    def describe(self) -> str:
        return "polygon:" + ";".join(f"{x:.17g},{y:.17g}" for x, y in self.vertices)

    @classmethod
    def from_points(cls, points) -> "PolygonBall":
        """Envolvente convexa de los puntos y sus opuestos."""
        P = np.asarray(points, dtype=float)
        cloud = np.vstack([P, -P])
        try:
            hull = ConvexHull(cloud)
        except Exception as e:
            raise InvalidBallError(f"No se pudo construir la envolvente convexa: {e}")
        # En 2-D scipy devuelve los vértices en sentido antihorario
        return cls(tuple(map(tuple, cloud[hull.vertices])))

    @classmethod
    def regular(cls, n: int, phase: float = 0.0) -> "PolygonBall":
        if n < 4 or n % 2:
            raise InvalidBallError(f"El polígono regular necesita un número par >= 4 de lados, recibido {n}")
        theta = phase + 2.0 * np.pi * np.arange(n) / n
        V = np.column_stack([np.cos(theta), np.sin(theta)])
        # Cierra la simetría exactamente
        V[n // 2:] = -V[: n // 2]
        return cls(tuple(map(tuple, V)))

    @classmethod
    def random(cls, n: int, rng: Optional[np.random.Generator] = None, seed: Optional[int] = None) -> "PolygonBall":
        """Polígono simétrico aleatorio con exactamente `n` vértices."""
        if n < 4 or n % 2:
            raise InvalidBallError(f"El polígono aleatorio necesita un número par >= 4 de vértices, recibido {n}")
        rng = rng if rng is not None else np.random.default_rng(seed)
        for _ in range(1000):
            theta = np.sort(rng.uniform(0.0, np.pi, n // 2))
            radius = rng.uniform(0.5, 1.5, n // 2)
            half = np.column_stack([radius * np.cos(theta), radius * np.sin(theta)])
            try:
                ball = cls.from_points(half)
            except InvalidBallError:
                continue
            if len(ball.vertices) == n:
                return ball
        raise InvalidBallError(f"No se generó un polígono de {n} vértices")


@dataclass(frozen=True)
class Line:
    """
    Recta dada por un punto y una dirección no nula.
    - Forma normal ⟨n, w⟩ = c con n la normal euclídea unitaria (dirección girada +90°).
    """

    point: Tuple[float, float]
    direction: Tuple[float, float]

    def __post_init__(self):
        p = tuple(float(t) for t in self.point)
        d = tuple(float(t) for t in self.direction)
        if len(p) != 2 or len(d) != 2 or not all(np.isfinite(p + d)):
            raise ZeroVectorError("La recta necesita un punto y una dirección finitos")
        if d == (0.0, 0.0):
            raise ZeroVectorError("La dirección de la recta no puede ser nula")
        object.__setattr__(self, "point", p)
        object.__setattr__(self, "direction", d)

    @property
    def normal(self) -> np.ndarray:
        d = np.asarray(self.direction)
        return np.array([-d[1], d[0]]) / np.hypot(d[0], d[1])

    @property
    def offset(self) -> float:
        return float(self.normal @ np.asarray(self.point))

    @property
    def unit_direction(self) -> np.ndarray:
        d = np.asarray(self.direction)
        return d / np.hypot(d[0], d[1])

    def signed_gap(self, z) -> np.ndarray:
        """⟨n, z⟩ − c, vectorizado sobre el último eje."""
        return np.asarray(z, dtype=float) @ self.normal - self.offset


@dataclass(frozen=True)
class ContactFace:
    """
    Conjunto donde un funcional alcanza su máximo sobre la bola.
    - Un extremo: contacto puntual. Dos extremos: segmento (ordenados lexicográficamente).
    """

    endpoints: Tuple[Tuple[float, float], ...]

    def __post_init__(self):
        pts = tuple((float(x), float(y)) for x, y in self.endpoints)
        if len(pts) not in (1, 2):
            raise ValueError("Una cara de contacto tiene uno o dos extremos")
        if len(pts) == 2:
            if pts[0] == pts[1]:
                raise ValueError("Los extremos de un segmento deben ser distintos")
            pts = tuple(sorted(pts))
        object.__setattr__(self, "endpoints", pts)

    @property
    def is_segment(self) -> bool:
        return len(self.endpoints) == 2

    @property
    def midpoint(self) -> np.ndarray:
        return np.mean(np.asarray(self.endpoints), axis=0)

    def transformed(self, z, r: float) -> "ContactFace":
        """Cara de z + r·K a partir de la de K."""
        E = np.asarray(z, dtype=float) + r * np.asarray(self.endpoints)
        return ContactFace(tuple(map(tuple, E)))
