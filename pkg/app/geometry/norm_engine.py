"""
Consultas métricas primitivas del plano normado.

Todas las funciones son puras. `norm`, `support` y `dist_point_line` admiten
arrays de forma (..., 2) y devuelven un array (...) o un float para un solo vector.
"""

from typing import Optional, Union
import numpy as np
from scipy.optimize import minimize_scalar
from app.exceptions import InvalidBallError, InvalidSpecError, NotTangentError
from app.models.ball import (
    INF,
    BallProperties,
    ContactFace,
    Line,
    LpBall,
    PolygonBall,
    Tangency,
    UnitBall,
)
from app.utils.numeric import directions
from app.utils.settings import get_settings
from app.utils.validation import as_point, require_nonzero, require_positive


def _scalar(value: np.ndarray) -> Union[float, np.ndarray]:
    return float(value) if np.ndim(value) == 0 else value


def _lp_gauge(v: np.ndarray, p) -> np.ndarray:
    a = np.abs(v)
    if p == INF:
        return a.max(axis=-1)
    if p == 1.0:
        return a.sum(axis=-1)
    if p == 2.0:
        return np.hypot(a[..., 0], a[..., 1])
    # Escalado por el máximo para evitar desbordes con p grande
    m = a.max(axis=-1)
    safe = np.where(m > 0, m, 1.0)
    r = a / safe[..., None]
    return m * np.sum(r**p, axis=-1) ** (1.0 / p)


def norm(B: UnitBall, v) -> Union[float, np.ndarray]:
    """Calibre de K: el factor por el que hay que escalar K para alcanzar v."""
    v = np.asarray(v, dtype=float)
    if isinstance(B, LpBall):
        return _scalar(_lp_gauge(v, B.p))
    if isinstance(B, PolygonBall):
        return _scalar(np.max(v @ B.functionals.T, axis=-1))
    raise InvalidBallError(f"Tipo de bola no soportado: {type(B).__name__}")


def support(B: UnitBall, n) -> Union[float, np.ndarray]:
    """Función soporte h_K(n) = max ⟨n, k⟩ sobre K (norma dual)."""
    n = np.asarray(n, dtype=float)
    if n.ndim == 1:
        require_nonzero(n, "normal")
    if isinstance(B, LpBall):
        return _scalar(_lp_gauge(n, B.q))
    if isinstance(B, PolygonBall):
        return _scalar(np.max(n @ B.vertex_array.T, axis=-1))
    raise InvalidBallError(f"Tipo de bola no soportado: {type(B).__name__}")


def contact_face(B: UnitBall, n, face_tol: Optional[float] = None) -> ContactFace:
    """Conjunto de puntos de K donde ⟨n, ·⟩ alcanza su máximo."""
    n = require_nonzero(n, "normal")
    tol = face_tol if face_tol is not None else get_settings().face_tol

    if isinstance(B, PolygonBall):
        V = B.vertex_array
        vals = V @ n
        i = int(np.argmax(vals))
        k = len(V)
        j = max(((i - 1) % k, (i + 1) % k), key=lambda idx: vals[idx])
        scale = float(np.hypot(*n) * np.abs(V).max())
        if vals[i] - vals[j] <= tol * scale:
            return ContactFace((tuple(V[i]), tuple(V[j])))
        return ContactFace((tuple(V[i]),))

    if not isinstance(B, LpBall):
        raise InvalidBallError(f"Tipo de bola no soportado: {type(B).__name__}")

    a = np.abs(n)
    s = np.sign(n)
    m = a.max()
    if B.is_inf:
        # Cuadrado: las componentes despreciables dejan libre esa coordenada
        big = a > tol * m
        if big.all():
            return ContactFace(((s[0], s[1]),))
        i = int(np.argmax(big))
        lo, hi = np.empty(2), np.empty(2)
        lo[i] = hi[i] = s[i]
        lo[1 - i], hi[1 - i] = -1.0, 1.0
        return ContactFace((tuple(lo), tuple(hi)))
    if B.p == 1.0:
        top = a >= m * (1.0 - tol)
        if top.all():
            return ContactFace(((s[0], 0.0), (0.0, s[1])))
        i = int(np.argmax(a))
        vertex = np.zeros(2)
        vertex[i] = s[i]
        return ContactFace((tuple(vertex),))

    # 1 < p < ∞: x_i = sgn(n_i)|n_i|^(q−1) / ‖n‖_q^(q−1)
    w = s * (a / m) ** (B.q - 1.0)
    x = w / _lp_gauge(w, B.p)
    return ContactFace((tuple(x),))


def dist_point_line(B: UnitBall, z, l: Line) -> Union[float, np.ndarray]:
    """Distancia de z a la recta en forma cerrada: |⟨n, z − p⟩| / h(n)."""
    return _scalar(np.abs(l.signed_gap(z)) / support(B, l.normal))


def touch_face_with_line(
    B: UnitBall, z, r: float, l: Line, tol: Optional[float] = None
) -> ContactFace:
    """Puntos donde el disco z + rK toca la recta tangente l."""
    z = as_point(z, "z")
    r = require_positive(r, "r")
    tol = tol if tol is not None else get_settings().geometric_tol
    d = dist_point_line(B, z, l)
    if abs(d - r) > tol:
        raise NotTangentError(
            f"El disco de radio {r:g} no es tangente a la recta (distancia {d:.12g})"
        )
    gap = float(l.signed_gap(z))
    # Funcional que apunta desde z hacia la recta
    m = -np.sign(gap) * l.normal if gap != 0 else l.normal
    return contact_face(B, m).transformed(z, r)


def is_birkhoff_orthogonal(B: UnitBall, x, y, tol: Optional[float] = None) -> bool:
    """
    x ⊥_B y si ‖x + αy‖ >= ‖x‖ para todo α.
    - La función es convexa en α y su mínimo está en |α| <= 2‖x‖/‖y‖, así que
      basta con minimizar en [−R, R] con R = 4‖x‖/‖y‖ (Brent acotado).
    """
    x = require_nonzero(x, "x")
    y = require_nonzero(y, "y")
    tol = tol if tol is not None else get_settings().geometric_tol
    nx = norm(B, x)
    R = 4.0 * nx / norm(B, y)
    res = minimize_scalar(
        lambda alpha: norm(B, x + alpha * y),
        bounds=(-R, R),
        method="bounded",
        options={"xatol": 1e-12},
    )
    best = min(float(res.fun), nx)
    return best >= nx - tol


def birkhoff_transversal(B: UnitBall, l: Line) -> np.ndarray:
    """Punto de S Birkhoff-ortogonal a la dirección de l (punto medio de la cara de contacto)."""
    return contact_face(B, l.normal).midpoint


def tangency_defect(B: UnitBall, z1, r1: float, z2, r2: float, kind: Tangency) -> float:
    """‖z1 − z2‖ − (r1 + r2) para tangencia exterior, ‖z1 − z2‖ − |r1 − r2| para interior."""
    d = norm(B, np.asarray(z1, dtype=float) - np.asarray(z2, dtype=float))
    if kind == Tangency.EXTERNAL:
        return float(d - (r1 + r2))
    if kind == Tangency.INTERNAL:
        return float(d - abs(r1 - r2))
    raise InvalidSpecError("El tipo de tangencia debe ser external o internal")


def disks_tangency(
    B: UnitBall, z1, r1: float, z2, r2: float, tol: Optional[float] = None
) -> Tangency:
    """Tipo de tangencia entre los discos z1 + r1·K y z2 + r2·K."""
    require_positive(r1, "r1")
    require_positive(r2, "r2")
    tol = tol if tol is not None else get_settings().geometric_tol
    if abs(tangency_defect(B, z1, r1, z2, r2, Tangency.EXTERNAL)) <= tol:
        return Tangency.EXTERNAL
    if abs(tangency_defect(B, z1, r1, z2, r2, Tangency.INTERNAL)) <= tol:
        return Tangency.INTERNAL
    return Tangency.NONE


def ball_properties(B: UnitBall) -> BallProperties:
    if isinstance(B, LpBall) and not B.is_inf and B.p > 1.0:
        return BallProperties(strictly_convex=True, smooth=True)
    return BallProperties(strictly_convex=False, smooth=False)


def boundary_samples(B: UnitBall, n: int) -> np.ndarray:
    """`n` puntos de S en sentido antihorario (escalado radial de direcciones euclídeas)."""
    u = directions(n)
    return u / norm(B, u)[:, None]


def max_euclidean_ratio(B: UnitBall) -> float:
    """Máximo de ‖u‖ sobre los vectores euclídeos unitarios u."""
    if isinstance(B, PolygonBall):
        return float(np.max(np.hypot(B.functionals[:, 0], B.functionals[:, 1])))
    if B.is_inf:
        return 1.0
    return float(max(1.0, 2.0 ** (1.0 / B.p - 0.5)))
