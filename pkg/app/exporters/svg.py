"""
Figuras SVG 1.1 de las cónicas trazadas.

El documento se construye por capas (`<g id=...>`): circunferencia unidad, círculo o
recta directriz, focos, regiones, curvas, segmentos detectados y asíntotas.
El eje y se invierte al escribir las coordenadas para que el dibujo tenga y hacia arriba.
"""

from pathlib import Path
from typing import Iterable, List, Optional, Sequence, Union
import numpy as np
from app.geometry.norm_engine import boundary_samples
from app.models.ball import PolygonBall, UnitBall
from app.models.conic import (
    Bisector,
    ConicSpec,
    DSegment,
    EllipseFoci,
    EllipseLeadingCircle,
    HyperbolaFoci,
    HyperbolaLeadingCircle,
    LeadingLineConic,
    Membership,
    MEMBERSHIP_CODES,
)
from app.models.curve import AsymptoteCone, AsymptoteLine, BBox, OccupancyGrid, TraceReport
from app.exporters.csv_writer import fmt
from app.utils.settings import get_settings

CURVE_COLORS = ("#1f4e9c", "#b5452b", "#2b8a3e", "#7a3fa0", "#a67c00")


class SvgDocument:
    """Acumula elementos por capa y los escribe en orden fijo."""

    LAYERS = ("region", "unit-circle", "leading", "asymptotes", "curves", "segments", "foci")

    def __init__(self, bbox: BBox, size: int):
        self.bbox = bbox
        self.size = size
        xmin, ymin, xmax, ymax = bbox
        self.scale = max(xmax - xmin, ymax - ymin) / size  # unidades de usuario por píxel
        self._layers = {name: [] for name in self.LAYERS}

    def _xy(self, x: float, y: float) -> str:
        return f"{fmt(x)},{fmt(-y)}"

    def stroke(self, px: float) -> str:
        return fmt(px * self.scale)

    def add_polyline(self, layer: str, points, color: str, width: float = 1.5, closed: bool = False) -> None:
        coords = " ".join(self._xy(x, y) for x, y in points)
        tag = "polygon" if closed else "polyline"
        self._layers[layer].append(
            f"<{tag} points='{coords}' fill='none' stroke='{color}' stroke-width='{self.stroke(width)}'/>"
        )

    def add_polygon(self, layer: str, points, fill: str, opacity: float = 0.25) -> None:
        coords = " ".join(self._xy(x, y) for x, y in points)
        self._layers[layer].append(f"<polygon points='{coords}' fill='{fill}' fill-opacity='{opacity:g}' stroke='none'/>")

    def add_line(self, layer: str, p, q, color: str, width: float = 1.0, dashed: bool = False) -> None:
        dash = f" stroke-dasharray='{self.stroke(6)},{self.stroke(4)}'" if dashed else ""
        self._layers[layer].append(
            f"<line x1='{fmt(p[0])}' y1='{fmt(-p[1])}' x2='{fmt(q[0])}' y2='{fmt(-q[1])}' "
            f"stroke='{color}' stroke-width='{self.stroke(width)}'{dash}/>"
        )

    def add_dot(self, layer: str, p, color: str, radius: float = 3.0) -> None:
        self._layers[layer].append(
            f"<circle cx='{fmt(p[0])}' cy='{fmt(-p[1])}' r='{self.stroke(radius)}' fill='{color}'/>"
        )

    def add_cells(self, layer: str, grid: OccupancyGrid, member: Membership, fill: str, opacity: float) -> None:
        ny, nx = grid.shape
        xmin, ymin, xmax, ymax = grid.bbox
        w = (xmax - xmin) / nx
        h = (ymax - ymin) / ny
        j, i = np.nonzero(grid.codes == MEMBERSHIP_CODES[member])
        for jj, ii in zip(j, i):
            x = xmin + ii * w
            y = ymin + (jj + 1) * h
            self._layers[layer].append(
                f"<rect x='{fmt(x)}' y='{fmt(-y)}' width='{fmt(w)}' height='{fmt(h)}' "
                f"fill='{fill}' fill-opacity='{opacity:g}'/>"
            )

    def render(self) -> str:
        xmin, ymin, xmax, ymax = self.bbox
        out = [
            "<?xml version='1.0' encoding='UTF-8'?>",
            "<svg xmlns='http://www.w3.org/2000/svg' version='1.1' "
            f"width='{self.size}' height='{self.size}' "
            f"viewBox='{fmt(xmin)} {fmt(-ymax)} {fmt(xmax - xmin)} {fmt(ymax - ymin)}'>",
        ]
        for name in self.LAYERS:
            out.append(f"<g id='{name}'>")
            out.extend(self._layers[name])
            out.append("</g>")
        out.append("</svg>")
        return "\n".join(out) + "\n"


def _foci(spec: ConicSpec) -> List:
    if isinstance(spec, (EllipseFoci, HyperbolaFoci)):
        return [spec.f1, spec.f2]
    if isinstance(spec, (EllipseLeadingCircle, HyperbolaLeadingCircle, LeadingLineConic)):
        return [spec.focus]
    if isinstance(spec, (Bisector, DSegment)):
        return [spec.x, spec.y]
    return []


def _unit_circle(B: UnitBall, scale: float = 1.0) -> np.ndarray:
    if isinstance(B, PolygonBall):
        return scale * B.vertex_array
    return scale * boundary_samples(B, 256)


def union_bbox(boxes: Iterable[BBox]) -> BBox:
    arr = np.asarray(list(boxes), dtype=float)
    return (arr[:, 0].min(), arr[:, 1].min(), arr[:, 2].max(), arr[:, 3].max())


def emit_svg(
    B: UnitBall,
    specs: Sequence[ConicSpec],
    traces: Sequence[Optional[TraceReport]],
    bbox: BBox,
    size: Optional[int] = None,
) -> str:
    """Dibuja cada cónica con su traza; `traces[k]` puede ser None si la cónica no se trazó."""
    doc = SvgDocument(bbox, size or get_settings().svg_size)
    reach = 2.0 * float(np.hypot(bbox[2] - bbox[0], bbox[3] - bbox[1]))

    doc.add_polyline("unit-circle", _unit_circle(B), "#888888", width=1.0, closed=True)

    for k, (spec, trace) in enumerate(zip(specs, traces)):
        color = CURVE_COLORS[k % len(CURVE_COLORS)]
        if isinstance(spec, (EllipseLeadingCircle, HyperbolaLeadingCircle)):
            doc.add_polyline("leading", _unit_circle(B, spec.R), color, width=1.0, closed=True)
        elif isinstance(spec, LeadingLineConic):
            p = np.asarray(spec.line.point)
            d = spec.line.unit_direction
            doc.add_line("leading", p - reach * d, p + reach * d, color, dashed=True)
        for f in _foci(spec):
            doc.add_dot("foci", f, color)

        if trace is None:
            continue
        if trace.region is not None:
            doc.add_cells("region", trace.region, Membership.ON, color, 0.45)
        for curve in trace.curves:
            if len(curve.points) > 1:
                doc.add_polyline("curves", curve.points, color, closed=curve.closed)
        for span in trace.segments:
            points = trace.curves[span.curve].points[span.start:span.end + 1]
            doc.add_polyline("segments", points, "#d62728", width=3.0)
        if trace.asymptotes is not None:
            for item in trace.asymptotes.items:
                if isinstance(item, AsymptoteLine):
                    p = np.asarray(item.line.point)
                    d = item.line.unit_direction
                    doc.add_line("asymptotes", p - reach * d, p + reach * d, "#555555", dashed=True)
                elif isinstance(item, AsymptoteCone):
                    apex = np.asarray(item.apex)
                    rays = [apex + reach * np.asarray(u) / np.hypot(*u) for u in item.directions]
                    doc.add_polygon("asymptotes", [apex, rays[0], rays[1]], "#555555", 0.15)
                    for ray in rays:
                        doc.add_line("asymptotes", apex, ray, "#555555", dashed=True)
    return doc.render()


def write_svg(path: Union[str, Path], document: str) -> None:
    Path(path).write_text(document, encoding="utf-8")
