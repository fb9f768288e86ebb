"""
Lugares geométricos como funciones residuo con signo.

Convenciones de signo (Interior):
- elipses, hipérbolas, bisectriz: F < 0
- cónica por recta directriz: F > 0 (lado del foco)
- d-segmento: F >= 0 siempre; pertenece si F <= tol
"""

from typing import Optional, Tuple, Union
import numpy as np
from app.exceptions import InvalidSpecError
from app.geometry.norm_engine import disks_tangency, dist_point_line, norm
from app.models.ball import Tangency, UnitBall
from app.models.conic import (
    Bisector,
    ConicSpec,
    Degeneracy,
    DSegment,
    EllipseFoci,
    EllipseLeadingCircle,
    HyperbolaFoci,
    HyperbolaLeadingCircle,
    LeadingLineConic,
    Membership,
)
from app.utils.settings import get_settings

FOCAL_KINDS = (EllipseFoci, HyperbolaFoci)
LEADING_CIRCLE_KINDS = (EllipseLeadingCircle, HyperbolaLeadingCircle)


def _as_array(z) -> np.ndarray:
    return np.asarray(z, dtype=float)


def _out(value):
    return float(value) if np.ndim(value) == 0 else value


def residual(B: UnitBall, spec: ConicSpec, z) -> Union[float, np.ndarray]:
    """F(z), vectorizado sobre arrays (..., 2)."""
    z = _as_array(z)
    if isinstance(spec, EllipseFoci):
        F = norm(B, z - spec.f1) + norm(B, z - spec.f2) - 2.0 * spec.a
    elif isinstance(spec, HyperbolaFoci):
        F = np.abs(norm(B, z - spec.f1) - norm(B, z - spec.f2)) - 2.0 * spec.a
    elif isinstance(spec, EllipseLeadingCircle):
        F = norm(B, z) + norm(B, z - spec.focus) - spec.R
    elif isinstance(spec, HyperbolaLeadingCircle):
        F = np.abs(norm(B, z) - norm(B, z - spec.focus)) - spec.R
    elif isinstance(spec, LeadingLineConic):
        F = dist_point_line(B, z, spec.line) - spec.gamma * norm(B, z - spec.focus)
    elif isinstance(spec, Bisector):
        F = norm(B, z - spec.x) - norm(B, z - spec.y)
    elif isinstance(spec, DSegment):
        x = np.asarray(spec.x)
        y = np.asarray(spec.y)
        F = norm(B, x - z) + norm(B, z - y) - norm(B, x - y)
    else:
        raise InvalidSpecError(f"Cónica no soportada: {type(spec).__name__}")
    return _out(F)


def equivalent_foci_spec(spec: Union[EllipseLeadingCircle, HyperbolaLeadingCircle]):
    """Versión por focos de una cónica por círculo director: focos 0 y `focus`, a = R/2."""
    if isinstance(spec, EllipseLeadingCircle):
        return EllipseFoci((0.0, 0.0), spec.focus, spec.R / 2.0)
    if isinstance(spec, HyperbolaLeadingCircle):
        return HyperbolaFoci((0.0, 0.0), spec.focus, spec.R / 2.0)
    raise InvalidSpecError("Solo las cónicas por círculo director tienen versión por focos")


def branch_residuals(B: UnitBall, spec, z) -> Tuple:
    """
    Residuos de rama F± = (‖z − f1‖ − ‖z − f2‖) ∓ 2a.
    - F+ se anula en la rama próxima a f2; F− en la próxima a f1.
    """
    if isinstance(spec, HyperbolaLeadingCircle):
        spec = equivalent_foci_spec(spec)
    if not isinstance(spec, HyperbolaFoci):
        raise InvalidSpecError("Los residuos de rama solo existen para hipérbolas")
    z = _as_array(z)
    diff = norm(B, z - spec.f1) - norm(B, z - spec.f2)
    return _out(diff - 2.0 * spec.a), _out(diff + 2.0 * spec.a)


def codes_from_residual(spec: ConicSpec, F, tol: float) -> np.ndarray:
    """0 = Interior, 1 = On, 2 = Exterior."""
    F = np.asarray(F)
    if isinstance(spec, DSegment):
        return np.where(F <= tol, 1, 2).astype(np.uint8)
    if isinstance(spec, LeadingLineConic):
        return np.where(np.abs(F) <= tol, 1, np.where(F > tol, 0, 2)).astype(np.uint8)
    return np.where(np.abs(F) <= tol, 1, np.where(F < -tol, 0, 2)).astype(np.uint8)


_FROM_CODE = (Membership.INTERIOR, Membership.ON, Membership.EXTERIOR)


def membership_codes(B: UnitBall, spec: ConicSpec, z, tol: Optional[float] = None) -> np.ndarray:
    tol = tol if tol is not None else get_settings().geometric_tol
    return codes_from_residual(spec, residual(B, spec, z), tol)


def membership(B: UnitBall, spec: ConicSpec, z, tol: Optional[float] = None) -> Membership:
    """Clasifica un punto como Interior, On o Exterior según el residuo."""
    return _FROM_CODE[int(membership_codes(B, spec, _as_array(z), tol))]


def tangency_membership_leading_circle(
    B: UnitBall, spec, z, tol: Optional[float] = None
) -> bool:
    """
    Definición directa: el disco z + εK, con ε = ‖z − focus‖, toca L = R·K.
    - Elipse: tangencia interior.
    - Hipérbola: se admiten ambos tipos de tangencia.
    """
    tol = tol if tol is not None else get_settings().geometric_tol
    z = _as_array(z)
    eps = norm(B, z - np.asarray(spec.focus))
    if eps <= 0.0:
        return False
    kind = disks_tangency(B, z, eps, (0.0, 0.0), spec.R, tol)
    if isinstance(spec, EllipseLeadingCircle):
        return kind == Tangency.INTERNAL
    if isinstance(spec, HyperbolaLeadingCircle):
        return kind != Tangency.NONE
    raise InvalidSpecError("Se esperaba una cónica por círculo director")


def leading_circle_touch_defect(B: UnitBall, spec, z) -> Union[float, np.ndarray]:
    """
    Construcción directa por punto de contacto.
    - p es el punto de L sobre la recta que une el origen con z.
    - Devuelve ‖p − z‖ − ‖z − focus‖ (para la hipérbola, el candidato de menor defecto).
    """
    z = _as_array(z)
    r = norm(B, z)
    eps = norm(B, z - np.asarray(spec.focus))
    if isinstance(spec, EllipseLeadingCircle):
        # p = R·z/‖z‖; con z = 0 cualquier punto de L está a distancia R
        return _out(np.abs(r - spec.R) - eps)
    if isinstance(spec, HyperbolaLeadingCircle):
        # Exterior: p = R·z/‖z‖ con ‖z‖ > R. Interior (L dentro del disco): p = −R·z/‖z‖
        d_ext = (r - spec.R) - eps
        d_int = (r + spec.R) - eps
        return _out(np.where(np.abs(d_ext) <= np.abs(d_int), d_ext, d_int))
    raise InvalidSpecError("Se esperaba una cónica por círculo director")


def validate_spec(B: UnitBall, spec: ConicSpec) -> None:
    """Comprueba los invariantes estructurales de la cónica frente a la bola."""
    tol = get_settings().geometric_tol
    if isinstance(spec, FOCAL_KINDS):
        if spec.f1 == spec.f2:
            raise InvalidSpecError("Los focos deben ser distintos")
        if spec.a < 0:
            raise InvalidSpecError(f"El semieje a debe ser >= 0, recibido {spec.a}")
        if isinstance(spec, EllipseFoci) and spec.a == 0:
            raise InvalidSpecError("La elipse necesita a > 0")
    elif isinstance(spec, LEADING_CIRCLE_KINDS):
        if spec.R <= 0:
            raise InvalidSpecError(f"El radio del círculo director debe ser positivo, recibido {spec.R}")
        rf = norm(B, spec.focus)
        if isinstance(spec, EllipseLeadingCircle) and rf >= spec.R:
            raise InvalidSpecError(
                f"El foco debe estar en el interior del círculo director (‖focus‖ = {rf:g} >= R = {spec.R:g})"
            )
        if isinstance(spec, HyperbolaLeadingCircle) and rf <= spec.R:
            raise InvalidSpecError(
                f"El foco debe ser exterior al círculo director (‖focus‖ = {rf:g} <= R = {spec.R:g})"
            )
    elif isinstance(spec, LeadingLineConic):
        if spec.gamma <= 0:
            raise InvalidSpecError(f"gamma debe ser positivo, recibido {spec.gamma}")
        if dist_point_line(B, spec.focus, spec.line) <= tol:
            raise InvalidSpecError("El foco no puede estar sobre la recta directriz")
    elif isinstance(spec, (Bisector, DSegment)):
        if spec.x == spec.y:
            raise InvalidSpecError("Los puntos x e y deben ser distintos")
    else:
        raise InvalidSpecError(f"Cónica no soportada: {type(spec).__name__}")


def focal_distance(B: UnitBall, spec) -> float:
    """2c = ‖f1 − f2‖ para las cónicas por focos."""
    return float(norm(B, np.asarray(spec.f1) - np.asarray(spec.f2)))


def classify_degeneracy(B: UnitBall, spec: ConicSpec) -> Degeneracy:
    validate_spec(B, spec)
    if isinstance(spec, Bisector):
        return Degeneracy.BISECTOR_SET
    if isinstance(spec, DSegment):
        return Degeneracy.DSEGMENT_SET
    if not isinstance(spec, FOCAL_KINDS):
        return Degeneracy.NONDEGENERATE

    two_c = focal_distance(B, spec)
    two_a = 2.0 * spec.a
    tol = get_settings().geometric_tol * max(1.0, two_c)
    if isinstance(spec, EllipseFoci):
        if abs(two_a - two_c) <= tol:
            return Degeneracy.DSEGMENT_SET
        if two_a < two_c:
            return Degeneracy.EMPTY
        return Degeneracy.NONDEGENERATE
    if two_a <= tol:
        return Degeneracy.BISECTOR_SET
    if abs(two_a - two_c) <= tol:
        return Degeneracy.RAYS_OR_CONES
    if two_a > two_c:
        return Degeneracy.EMPTY
    return Degeneracy.NONDEGENERATE
