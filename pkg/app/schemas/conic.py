from pydantic import BaseModel, Field
from typing import Annotated, Literal, Tuple, Union
from app.models.ball import Line
from app.models.conic import (
    Bisector,
    ConicSpec,
    DSegment,
    EllipseFoci,
    EllipseLeadingCircle,
    HyperbolaFoci,
    HyperbolaLeadingCircle,
    LeadingLineConic,
)

Point = Tuple[float, float]


class LineSchema(BaseModel):
    point: Point
    direction: Point = Field(..., description="Dirección no nula")

    def to_model(self) -> Line:
        return Line(self.point, self.direction)


class EllipseFociSchema(BaseModel):
    """E(f1, f2, a): suma de distancias a los focos igual a 2a."""

    kind: Literal["ellipse_foci"] = "ellipse_foci"
    f1: Point
    f2: Point
    a: float = Field(..., gt=0)

    def to_model(self) -> EllipseFoci:
        return EllipseFoci(self.f1, self.f2, self.a)


class HyperbolaFociSchema(BaseModel):
    """H(f1, f2, a): diferencia de distancias igual a 2a; a = 0 y a = c son los casos degenerados."""

    kind: Literal["hyperbola_foci"] = "hyperbola_foci"
    f1: Point
    f2: Point
    a: float = Field(..., ge=0)

    def to_model(self) -> HyperbolaFoci:
        return HyperbolaFoci(self.f1, self.f2, self.a)


class EllipseLeadingCircleSchema(BaseModel):
    """Círculo director R·K centrado en el origen; el foco debe ser interior."""

    kind: Literal["ellipse_leading_circle"] = "ellipse_leading_circle"
    R: float = Field(..., gt=0)
    focus: Point

    def to_model(self) -> EllipseLeadingCircle:
        return EllipseLeadingCircle(self.R, self.focus)


class HyperbolaLeadingCircleSchema(BaseModel):
    kind: Literal["hyperbola_leading_circle"] = "hyperbola_leading_circle"
    R: float = Field(..., gt=0)
    focus: Point

    def to_model(self) -> HyperbolaLeadingCircle:
        return HyperbolaLeadingCircle(self.R, self.focus)


class LeadingLineSchema(BaseModel):
    """
    Cónica por foco y directriz.
    - `gamma` > 1 elipse, = 1 parábola, < 1 hipérbola.
    """

    kind: Literal["leading_line"] = "leading_line"
    focus: Point
    line: LineSchema
    gamma: float = Field(..., gt=0)

    def to_model(self) -> LeadingLineConic:
        return LeadingLineConic(self.focus, self.line.to_model(), self.gamma)


class BisectorSchema(BaseModel):
    kind: Literal["bisector"] = "bisector"
    x: Point
    y: Point

    def to_model(self) -> Bisector:
        return Bisector(self.x, self.y)


class DSegmentSchema(BaseModel):
    kind: Literal["d_segment"] = "d_segment"
    x: Point
    y: Point

    def to_model(self) -> DSegment:
        return DSegment(self.x, self.y)


ConicSchema = Annotated[
    Union[
        EllipseFociSchema,
        HyperbolaFociSchema,
        EllipseLeadingCircleSchema,
        HyperbolaLeadingCircleSchema,
        LeadingLineSchema,
        BisectorSchema,
        DSegmentSchema,
    ],
    Field(discriminator="kind"),
]


def spec_to_schema(spec: ConicSpec):
    """Inverso de `to_model`, usado al reescribir escenas."""
    if isinstance(spec, EllipseFoci):
        return EllipseFociSchema(f1=spec.f1, f2=spec.f2, a=spec.a)
    if isinstance(spec, HyperbolaFoci):
        return HyperbolaFociSchema(f1=spec.f1, f2=spec.f2, a=spec.a)
    if isinstance(spec, EllipseLeadingCircle):
        return EllipseLeadingCircleSchema(R=spec.R, focus=spec.focus)
    if isinstance(spec, HyperbolaLeadingCircle):
        return HyperbolaLeadingCircleSchema(R=spec.R, focus=spec.focus)
    if isinstance(spec, LeadingLineConic):
        line = LineSchema(point=spec.line.point, direction=spec.line.direction)
        return LeadingLineSchema(focus=spec.focus, line=line, gamma=spec.gamma)
    if isinstance(spec, Bisector):
        return BisectorSchema(x=spec.x, y=spec.y)
    return DSegmentSchema(x=spec.x, y=spec.y)
