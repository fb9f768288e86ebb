"""
Resultados del trazado: polilíneas, informes de trazado, rejillas de ocupación
y candidatos a asíntota.
"""

from dataclasses import dataclass, field
from typing import List, NamedTuple, Optional, Tuple, Union
import numpy as np
from app.models.ball import ContactFace, Line
from app.models.conic import Degeneracy, Membership, MEMBERSHIP_CODES

BBox = Tuple[float, float, float, float]  # (xmin, ymin, xmax, ymax)


def _frozen(arr) -> np.ndarray:
    arr = np.array(arr, dtype=float)
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class PolyCurve:
    """
    Polilínea ordenada que aproxima un lugar.
    - `points`: array (k, 2) de solo lectura.
    - `residual_tol`: cota del |residuo| garantizada en cada punto.
    """

    points: np.ndarray
    closed: bool
    residual_tol: float
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "points", _frozen(self.points).reshape(-1, 2))

    def __len__(self) -> int:
        return len(self.points)

    @property
    def extent(self) -> float:
        """Diagonal de la caja envolvente (escala de la curva)."""
        if len(self.points) == 0:
            return 0.0
        return float(np.hypot(*np.ptp(self.points, axis=0)))


class SegmentSpan(NamedTuple):
    curve: int
    start: int
    end: int


@dataclass(frozen=True)
class OccupancyGrid:
    """
    Pertenencia por celda (centro de celda) sobre una caja.
    - `codes[j, i]`: 0 Interior, 1 On, 2 Exterior; j recorre y, i recorre x.
    """

    codes: np.ndarray
    bbox: BBox

    def __post_init__(self):
        codes = np.array(self.codes, dtype=np.uint8)
        codes.setflags(write=False)
        object.__setattr__(self, "codes", codes)
        object.__setattr__(self, "bbox", tuple(float(t) for t in self.bbox))

    @property
    def shape(self) -> Tuple[int, int]:
        return self.codes.shape

    def fraction(self, member: Membership) -> float:
        return float(np.mean(self.codes == MEMBERSHIP_CODES[member]))

    @property
    def on_fraction(self) -> float:
        return self.fraction(Membership.ON)

    def cell_centers(self) -> Tuple[np.ndarray, np.ndarray]:
        """Coordenadas x (por columna) e y (por fila) de los centros de celda."""
        ny, nx = self.codes.shape
        xmin, ymin, xmax, ymax = self.bbox
        xs = xmin + (np.arange(nx) + 0.5) * (xmax - xmin) / nx
        ys = ymin + (np.arange(ny) + 0.5) * (ymax - ymin) / ny
        return xs, ys

    def on_points(self) -> np.ndarray:
        xs, ys = self.cell_centers()
        j, i = np.nonzero(self.codes == MEMBERSHIP_CODES[Membership.ON])
        return np.column_stack([xs[i], ys[j]])


@dataclass(frozen=True)
class AsymptoteLine:
    line: Line
    contact: Tuple[float, float]


@dataclass(frozen=True)
class AsymptoteCone:
    apex: Tuple[float, float]
    directions: Tuple[Tuple[float, float], Tuple[float, float]]


@dataclass(frozen=True)
class TangentData:
    """Datos en bruto de una recta soporte del círculo director que pasa por el foco."""

    normal: Tuple[float, float]
    line: Line
    contact: ContactFace  # sobre el círculo director R·K


@dataclass(frozen=True)
class AsymptoteSet:
    items: Tuple[Union[AsymptoteLine, AsymptoteCone], ...]
    tangents: Tuple[TangentData, ...] = ()

    @property
    def lines(self) -> List[AsymptoteLine]:
        return [it for it in self.items if isinstance(it, AsymptoteLine)]

    @property
    def cones(self) -> List[AsymptoteCone]:
        return [it for it in self.items if isinstance(it, AsymptoteCone)]


@dataclass(frozen=True)
class LineStats:
    """
    Estadísticas por recta de barrido (en orden de desplazamiento).
    - `crossings`: raíces aisladas; `intervals`: intervalos de raíces;
    - `exterior_runs`: tramos maximales con F < 0.
    """

    offsets: Tuple[float, ...] = ()
    crossings: Tuple[int, ...] = ()
    intervals: Tuple[int, ...] = ()
    exterior_runs: Tuple[int, ...] = ()


@dataclass(frozen=True)
class TraceReport:
    curves: Tuple[PolyCurve, ...]
    segments: Tuple[SegmentSpan, ...]
    degeneracy: Degeneracy
    region: Optional[OccupancyGrid] = None
    lines: LineStats = field(default_factory=LineStats)
    asymptotes: Optional[AsymptoteSet] = None

    @property
    def root_intervals(self) -> int:
        return int(sum(self.lines.intervals))


@dataclass(frozen=True)
class TraceParams:
    """Parámetros de trazado; `None` toma el valor de la configuración."""

    n: Optional[int] = None
    extent: Optional[float] = None
    tol: Optional[float] = None
    n_lines: Optional[int] = None
    n_stations: Optional[int] = None
    bbox: Optional[BBox] = None
    resolution: Optional[int] = None


class ConvexityResult(NamedTuple):
    convex: bool
    witness: Optional[int] = None
