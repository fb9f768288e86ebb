"""
Descripciones de los lugares geométricos (cónicas métricas, bisectriz y d-segmento).

Cada variante es un dataclass inmutable con un `kind` fijo que coincide con el
campo `kind` del JSON de escena.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Tuple, Union
import numpy as np
from app.exceptions import InvalidSpecError
from app.models.ball import Line

Point = Tuple[float, float]


def _point(value, name: str) -> Point:
    x, y = (float(t) for t in value)
    if not (np.isfinite(x) and np.isfinite(y)):
        raise InvalidSpecError(f"{name} debe ser finito")
    return (x, y)


def _real(value, name: str) -> float:
    value = float(value)
    if not np.isfinite(value):
        raise InvalidSpecError(f"{name} debe ser finito")
    return value


@dataclass(frozen=True)
class EllipseFoci:
    """E(f1, f2, a): ‖z − f1‖ + ‖z − f2‖ = 2a."""

    f1: Point
    f2: Point
    a: float
    kind: str = field(default="ellipse_foci", init=False)

    def __post_init__(self):
        object.__setattr__(self, "f1", _point(self.f1, "f1"))
        object.__setattr__(self, "f2", _point(self.f2, "f2"))
        object.__setattr__(self, "a", _real(self.a, "a"))


@dataclass(frozen=True)
class HyperbolaFoci:
    """H(f1, f2, a): |‖z − f1‖ − ‖z − f2‖| = 2a."""

    f1: Point
    f2: Point
    a: float
    kind: str = field(default="hyperbola_foci", init=False)

    def __post_init__(self):
        object.__setattr__(self, "f1", _point(self.f1, "f1"))
        object.__setattr__(self, "f2", _point(self.f2, "f2"))
        object.__setattr__(self, "a", _real(self.a, "a"))


@dataclass(frozen=True)
class EllipseLeadingCircle:
    """Elipse por círculo director L = R·K centrado en el origen y un foco interior."""

    R: float
    focus: Point
    kind: str = field(default="ellipse_leading_circle", init=False)

    def __post_init__(self):
        object.__setattr__(self, "R", _real(self.R, "R"))
        object.__setattr__(self, "focus", _point(self.focus, "focus"))

    @property
    def a(self) -> float:
        return self.R / 2.0


@dataclass(frozen=True)
class HyperbolaLeadingCircle:
    """Hipérbola por círculo director L = R·K y un foco exterior."""

    R: float
    focus: Point
    kind: str = field(default="hyperbola_leading_circle", init=False)

    def __post_init__(self):
        object.__setattr__(self, "R", _real(self.R, "R"))
        object.__setattr__(self, "focus", _point(self.focus, "focus"))

    @property
    def a(self) -> float:
        return self.R / 2.0


@dataclass(frozen=True)
class LeadingLineConic:
    """
    Cónica por foco y recta directriz: ρ(z, l) = γ‖z − focus‖.
    - γ > 1 elipse, γ = 1 parábola, γ < 1 hipérbola.
    """

    focus: Point
    line: Line
    gamma: float
    kind: str = field(default="leading_line", init=False)

    def __post_init__(self):
        object.__setattr__(self, "focus", _point(self.focus, "focus"))
        object.__setattr__(self, "gamma", _real(self.gamma, "gamma"))


@dataclass(frozen=True)
class Bisector:
    x: Point
    y: Point
    kind: str = field(default="bisector", init=False)

    def __post_init__(self):
        object.__setattr__(self, "x", _point(self.x, "x"))
        object.__setattr__(self, "y", _point(self.y, "y"))


@dataclass(frozen=True)
class DSegment:
    x: Point
    y: Point
    kind: str = field(default="d_segment", init=False)

    def __post_init__(self):
        object.__setattr__(self, "x", _point(self.x, "x"))
        object.__setattr__(self, "y", _point(self.y, "y"))


ConicSpec = Union[
    EllipseFoci,
    EllipseLeadingCircle,
    HyperbolaFoci,
    HyperbolaLeadingCircle,
    LeadingLineConic,
    Bisector,
    DSegment,
]


class Membership(str, Enum):
    INTERIOR = "interior"
    ON = "on"
    EXTERIOR = "exterior"


# Códigos de celda en las rejillas de ocupación
MEMBERSHIP_CODES = {Membership.INTERIOR: 0, Membership.ON: 1, Membership.EXTERIOR: 2}


class Degeneracy(str, Enum):
    NONDEGENERATE = "nondegenerate"
    DSEGMENT_SET = "dsegment_set"
    BISECTOR_SET = "bisector_set"
    RAYS_OR_CONES = "rays_or_cones"
    EMPTY = "empty"
