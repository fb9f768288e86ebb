"""
Extracción de lugares como polilíneas.

- Trazado radial para lugares acotados y convexos (elipses).
- Barrido por rectas paralelas para lugares no acotados (hipérbolas, parábolas).
- Rasterizado por celdas para conjuntos degenerados que pueden ser 2-D.
"""

from typing import Callable, List, Optional, Sequence, Tuple, Union
import numpy as np
from scipy.optimize import brentq
from scipy.spatial.distance import directed_hausdorff
from app.exceptions import (
    BracketingError,
    DegenerateSpecError,
    EmptyLocusError,
    InvalidSpecError,
    TraceError,
)
from app.geometry.loci import (
    branch_residuals,
    classify_degeneracy,
    codes_from_residual,
    equivalent_foci_spec,
    membership,
    residual,
    validate_spec,
)
from app.geometry.norm_engine import (
    birkhoff_transversal,
    contact_face,
    dist_point_line,
    norm,
    support,
)
from app.models.ball import Line, UnitBall
from app.models.conic import (
    MEMBERSHIP_CODES,
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
from app.models.curve import (
    AsymptoteCone,
    AsymptoteLine,
    AsymptoteSet,
    BBox,
    ConvexityResult,
    LineStats,
    OccupancyGrid,
    PolyCurve,
    SegmentSpan,
    TangentData,
    TraceParams,
    TraceReport,
)
from app.utils.logging import get_logger
from app.utils.numeric import cross, directions, merge_close, sign_changes
from app.utils.settings import get_settings
from app.utils.validation import as_point

logger = get_logger(__name__)

MERGE_GAP = 1e-7
ON = MEMBERSHIP_CODES[Membership.ON]


# ---------------------------------------------------------------------------
# Trazado radial
# ---------------------------------------------------------------------------


def interior_seed(B: UnitBall, spec: ConicSpec) -> np.ndarray:
    """Punto interior certificado de un lugar acotado y convexo."""
    if isinstance(spec, EllipseFoci):
        return (np.asarray(spec.f1) + np.asarray(spec.f2)) / 2.0
    if isinstance(spec, EllipseLeadingCircle):
        return np.asarray(spec.focus) / 2.0
    if isinstance(spec, LeadingLineConic):
        return np.asarray(spec.focus, dtype=float)
    raise InvalidSpecError(f"{spec.kind} no es un lugar acotado")


def _radial_scale(B: UnitBall, spec: ConicSpec) -> float:
    if isinstance(spec, EllipseFoci):
        return spec.a
    if isinstance(spec, EllipseLeadingCircle):
        return spec.R / 2.0
    return float(dist_point_line(B, spec.focus, spec.line))


def radial_roots(
    g: Callable[[np.ndarray], np.ndarray],
    seed: np.ndarray,
    dirs: np.ndarray,
    scale: float,
    root_tol: float,
    max_doublings: int = 60,
) -> np.ndarray:
    """
    Para cada dirección u, el t > 0 donde g(seed + t·u) cambia de signo.
    - g es negativa en el interior y se evalúa vectorizada sobre (m, 2).
    - Acotación por duplicación y refinamiento con brentq.
    """
    k = len(dirs)
    t_lo = np.zeros(k)
    t_hi = np.full(k, max(scale, 1e-12))
    pending = np.ones(k, dtype=bool)
    for _ in range(max_doublings):
        idx = np.nonzero(pending)[0]
        if idx.size == 0:
            break
        vals = np.asarray(g(seed + t_hi[idx, None] * dirs[idx]))
        done = vals >= 0
        pending[idx[done]] = False
        still = idx[~done]
        t_lo[still] = t_hi[still]
        t_hi[still] *= 2.0
    if pending.any():
        i = int(np.argmax(pending))
        u = (float(dirs[i, 0]), float(dirs[i, 1]))
        raise BracketingError(f"No se pudo acotar la raíz en la dirección {u}", direction=u)

    t = np.empty(k)
    for i in range(k):
        u = dirs[i]
        t[i] = brentq(lambda s: float(g(seed + s * u)), t_lo[i], t_hi[i], xtol=root_tol)
    return t


def _check_residuals(B: UnitBall, spec: ConicSpec, points: np.ndarray, tol: float) -> None:
    if len(points) == 0:
        return
    F = np.abs(np.asarray(residual(B, spec, points)))
    worst = int(np.argmax(F))
    if F[worst] > tol:
        p = points[worst]
        raise TraceError(
            f"Punto trazado fuera de tolerancia: residuo {F[worst]:.3e} en ({p[0]:.12g}, {p[1]:.12g})"
        )


def radial_trace(
    B: UnitBall,
    spec: ConicSpec,
    seed=None,
    n: Optional[int] = None,
    tol: Optional[float] = None,
    root_tol: Optional[float] = None,
) -> PolyCurve:
    """Traza un lugar acotado convexo lanzando `n` rayos equiespaciados desde una semilla interior."""
    settings = get_settings()
    n = n or settings.trace_points
    tol = tol if tol is not None else settings.geometric_tol
    root_tol = root_tol if root_tol is not None else settings.root_tol

    if not isinstance(spec, (EllipseFoci, EllipseLeadingCircle, LeadingLineConic)):
        raise InvalidSpecError(f"El trazado radial no admite {spec.kind}")
    if isinstance(spec, LeadingLineConic) and spec.gamma <= 1.0:
        raise InvalidSpecError("Con gamma <= 1 el lugar no es acotado; use el barrido")
    degeneracy = classify_degeneracy(B, spec)
    if degeneracy == Degeneracy.EMPTY:
        raise EmptyLocusError("Lugar vacío: 2a < ‖f1 − f2‖", degeneracy.value)
    if degeneracy != Degeneracy.NONDEGENERATE:
        raise DegenerateSpecError(f"Lugar degenerado ({degeneracy.value})", degeneracy.value)

    seed = interior_seed(B, spec) if seed is None else as_point(seed, "seed")
    if membership(B, spec, seed, tol) != Membership.INTERIOR:
        raise InvalidSpecError("La semilla del trazado radial debe ser interior")

    orient = -1.0 if isinstance(spec, LeadingLineConic) else 1.0
    dirs = directions(n)
    t = radial_roots(
        lambda z: orient * np.asarray(residual(B, spec, z)),
        seed,
        dirs,
        _radial_scale(B, spec),
        root_tol,
    )
    points = seed + t[:, None] * dirs
    _check_residuals(B, spec, points, tol)
    return PolyCurve(points, closed=True, residual_tol=tol, label=spec.kind)


# ---------------------------------------------------------------------------
# Barridos
# ---------------------------------------------------------------------------


def _runs(mask: np.ndarray) -> List[Tuple[int, int]]:
    """Tramos maximales [i, j] donde mask es verdadera."""
    runs = []
    i, n = 0, len(mask)
    while i < n:
        if mask[i]:
            j = i
            while j + 1 < n and mask[j + 1]:
                j += 1
            runs.append((i, j))
            i = j + 1
        else:
            i += 1
    return runs


def line_roots(
    values: np.ndarray,
    stations: np.ndarray,
    refine: Callable[[float], float],
    root_tol: float,
) -> Tuple[List[float], List[Tuple[int, int]]]:
    """
    Raíces de un residuo muestreado sobre una recta.
    - Estaciones con |F| <= 10·root_tol: un tramo de dos o más es un intervalo de raíces;
      una estación aislada es una raíz.
    - Cada cambio estricto de signo se refina con brentq.
    - Raíces a menos de 1e-7 se fusionan.
    """
    zero = np.abs(values) <= 10.0 * root_tol
    roots: List[float] = []
    intervals: List[Tuple[int, int]] = []
    for i, j in _runs(zero):
        if j > i:
            intervals.append((i, j))
        else:
            roots.append(float(stations[i]))
    for k in sign_changes(np.where(zero, 0.0, values)):
        roots.append(brentq(refine, stations[k], stations[k + 1], xtol=root_tol))
    return merge_close(roots, MERGE_GAP), intervals


def _exterior_runs(values: np.ndarray, root_tol: float) -> int:
    return len(_runs(values < -10.0 * root_tol))


class _CurveBuilder:
    """Acumula los puntos de una rama recta a recta y registra los intervalos como segmentos."""

    def __init__(self, label: str):
        self.label = label
        self.points: List[np.ndarray] = []
        self.spans: List[Tuple[int, int]] = []

    def add_line(self, pieces: List[np.ndarray]) -> None:
        """`pieces`: lista de bloques (m, 2); los bloques con m >= 2 son intervalos de raíces."""
        if not pieces:
            return
        if self.points:
            # Recorre la recta empezando por el extremo más cercano al último punto
            last = self.points[-1]
            if np.hypot(*(pieces[-1][-1] - last)) < np.hypot(*(pieces[0][0] - last)):
                pieces = [p[::-1] for p in pieces[::-1]]
        for block in pieces:
            start = len(self.points)
            self.points.extend(block)
            if len(block) >= 2:
                self.spans.append((start, len(self.points) - 1))

    def build(self, tol: float) -> Optional[PolyCurve]:
        if not self.points:
            return None
        return PolyCurve(np.asarray(self.points), closed=False, residual_tol=tol, label=self.label)


def _line_pieces(
    base: np.ndarray,
    direction: np.ndarray,
    stations: np.ndarray,
    roots: Sequence[float],
    intervals: Sequence[Tuple[int, int]],
    keep: Callable[[float], bool] = lambda s: True,
) -> List[np.ndarray]:
    """Bloques de puntos de una recta ordenados por la coordenada de estación."""
    blocks = [(r, np.array([base + r * direction])) for r in roots if keep(r)]
    for i, j in intervals:
        if keep(stations[i]):
            s = stations[i : j + 1]
            blocks.append((stations[i], base + s[:, None] * direction))
    blocks.sort(key=lambda item: item[0])
    return [b for _, b in blocks]


def _assemble_report(
    builders: Sequence[_CurveBuilder],
    degeneracy: Degeneracy,
    stats: LineStats,
    tol: float,
) -> TraceReport:
    curves: List[PolyCurve] = []
    segments: List[SegmentSpan] = []
    for builder in builders:
        curve = builder.build(tol)
        if curve is None:
            continue
        index = len(curves)
        curves.append(curve)
        found = [SegmentSpan(index, i, j) for i, j in builder.spans]
        if len(curve) >= 3:
            found.extend(detect_segments(curve, curve_index=index))
        segments.extend(_merge_spans(found))
    return TraceReport(
        curves=tuple(curves), segments=tuple(segments), degeneracy=degeneracy, lines=stats
    )


def _merge_spans(spans: Sequence[SegmentSpan]) -> List[SegmentSpan]:
    """Une tramos solapados de la misma curva (abierta)."""
    merged: List[SegmentSpan] = []
    for span in sorted(spans, key=lambda s: (s.curve, s.start)):
        if merged and merged[-1].curve == span.curve and span.start <= merged[-1].end:
            if span.end > merged[-1].end:
                merged[-1] = SegmentSpan(span.curve, merged[-1].start, span.end)
            continue
        merged.append(span)
    return merged


def _require_nondegenerate(B: UnitBall, spec: ConicSpec) -> None:
    degeneracy = classify_degeneracy(B, spec)
    if degeneracy == Degeneracy.EMPTY:
        raise EmptyLocusError("Lugar vacío: 2a > ‖f1 − f2‖", degeneracy.value)
    if degeneracy != Degeneracy.NONDEGENERATE:
        raise DegenerateSpecError(
            f"Lugar degenerado ({degeneracy.value}); use region_grid", degeneracy.value
        )


def sweep_trace_hyperbola_foci(
    B: UnitBall,
    spec: Union[HyperbolaFoci, HyperbolaLeadingCircle],
    extent: Optional[float] = None,
    n_lines: Optional[int] = None,
    tol: Optional[float] = None,
    n_stations: Optional[int] = None,
    root_tol: Optional[float] = None,
) -> TraceReport:
    """
    Barre rectas paralelas al segmento focal desplazadas según la transversal de Birkhoff.
    - Rama "plus": F+ = 0 (cerca de f2). Rama "minus": F− = 0 (cerca de f1).
    """
    settings = get_settings()
    if isinstance(spec, HyperbolaLeadingCircle):
        spec = equivalent_foci_spec(spec)
    if not isinstance(spec, HyperbolaFoci):
        raise InvalidSpecError(f"El barrido de hipérbolas no admite {spec.kind}")
    _require_nondegenerate(B, spec)

    n_lines = n_lines or settings.sweep_lines
    n_stations = max(n_stations or settings.sweep_stations, 512)
    tol = tol if tol is not None else settings.geometric_tol
    root_tol = root_tol if root_tol is not None else settings.root_tol

    f1 = np.asarray(spec.f1)
    f2 = np.asarray(spec.f2)
    center = (f1 + f2) / 2.0
    d = f2 - f1
    dhat = d / np.hypot(*d)
    a = spec.a
    c = float(norm(B, d)) / 2.0
    extent = extent if extent is not None else 8.0 * max(2.0 * a, 2.0 * c)

    w = birkhoff_transversal(B, Line(tuple(center), tuple(d)))
    offsets = np.linspace(-extent, extent, n_lines)
    base = center + offsets[:, None] * w

    # Ventana: F± negativos en −S y positivos en +S en todas las rectas
    S = 2.0 * extent * float(np.hypot(*w)) * max(1.0, a / (c - a)) + 2.0 * float(np.hypot(*d))
    for _ in range(30):
        ends = base[:, None, :] + np.array([-S, S])[None, :, None] * dhat
        Fp, Fm = branch_residuals(B, spec, ends)
        if (Fp[:, 0] < 0).all() and (Fp[:, 1] > 0).all() and (Fm[:, 0] < 0).all() and (Fm[:, 1] > 0).all():
            break
        S *= 2.0
    else:
        logger.warning("La ventana del barrido no contiene todas las raíces (S = %g)", S)

    stations = np.linspace(-S, S, n_stations)
    P = base[:, None, :] + stations[None, :, None] * dhat
    Fp, Fm = branch_residuals(B, spec, P)
    F = np.asarray(residual(B, spec, P))

    builders = [_CurveBuilder("plus"), _CurveBuilder("minus")]
    crossings, intervals_count, runs = [], [], []
    for k in range(n_lines):
        total_roots = 0
        total_intervals = 0
        for b, values in enumerate((Fp[k], Fm[k])):
            refine = lambda s, b=b, k=k: float(branch_residuals(B, spec, base[k] + s * dhat)[b])
            roots, intervals = line_roots(values, stations, refine, root_tol)
            total_roots += len(roots)
            total_intervals += len(intervals)
            builders[b].add_line(_line_pieces(base[k], dhat, stations, roots, intervals))
        crossings.append(total_roots)
        intervals_count.append(total_intervals)
        runs.append(_exterior_runs(F[k], root_tol))

    stats = LineStats(
        offsets=tuple(float(o) for o in offsets),
        crossings=tuple(crossings),
        intervals=tuple(intervals_count),
        exterior_runs=tuple(runs),
    )
    report = _assemble_report(builders, Degeneracy.NONDEGENERATE, stats, tol)
    for curve in report.curves:
        _check_residuals(B, spec, curve.points, tol)
    logger.debug(
        "Barrido de hipérbola: %d rectas, %d curvas, %d intervalos",
        n_lines,
        len(report.curves),
        report.root_intervals,
    )
    return report


def sweep_trace_leading_line(
    B: UnitBall,
    spec: LeadingLineConic,
    extent: Optional[float] = None,
    n_lines: Optional[int] = None,
    tol: Optional[float] = None,
    n_stations: Optional[int] = None,
    root_tol: Optional[float] = None,
) -> TraceReport:
    """
    Barre rectas de dirección w (transversal de Birkhoff de l) apoyadas en l.
    - En cada recta ρ(z, l) = |s|, con s > 0 en el lado del foco.
    - Curvas "focal" (s > 0) y "far" (s < 0); la parábola solo tiene la focal.
    """
    settings = get_settings()
    if not isinstance(spec, LeadingLineConic):
        raise InvalidSpecError(f"El barrido por directriz no admite {spec.kind}")
    validate_spec(B, spec)
    if spec.gamma > 1.0:
        raise InvalidSpecError("Con gamma > 1 el lugar es una elipse acotada; use el trazado radial")

    n_lines = n_lines or settings.sweep_lines
    n_stations = max(n_stations or settings.sweep_stations, 512)
    tol = tol if tol is not None else settings.geometric_tol
    root_tol = root_tol if root_tol is not None else settings.root_tol

    l = spec.line
    f = np.asarray(spec.focus)
    gap = float(l.signed_gap(f))
    w = contact_face(B, np.sign(gap) * l.normal).midpoint
    t_f = gap / float(l.normal @ w)
    foot = f - t_f * w
    rho = float(dist_point_line(B, f, l))
    dhat = l.unit_direction
    gamma = spec.gamma
    extent = extent if extent is not None else 8.0 * rho

    offsets = np.linspace(-extent, extent, n_lines)
    base = foot + offsets[:, None] * dhat
    D = np.asarray(norm(B, base - f))

    if gamma < 1.0:
        # Todas las raíces cumplen |s| <= γ·D / (1 − γ)
        S = 1.25 * gamma * D / (1.0 - gamma) + rho
    else:
        S = 4.0 * (D + rho) * np.maximum(1.0, D / rho)
        for _ in range(10):
            far_end = base + S[:, None] * w
            short = np.asarray(residual(B, spec, far_end)) < -10.0 * root_tol
            if not short.any():
                break
            S = np.where(short, 2.0 * S, S)

    unit = np.linspace(-1.0, 1.0, n_stations)
    stations = S[:, None] * unit[None, :]
    P = base[:, None, :] + stations[:, :, None] * w
    F = np.asarray(residual(B, spec, P))

    builders = [_CurveBuilder("focal"), _CurveBuilder("far")]
    crossings, intervals_count, runs = [], [], []
    for k in range(n_lines):
        refine = lambda s, k=k: float(residual(B, spec, base[k] + s * w))
        roots, intervals = line_roots(F[k], stations[k], refine, root_tol)
        crossings.append(len(roots))
        intervals_count.append(len(intervals))
        runs.append(_exterior_runs(F[k], root_tol))
        builders[0].add_line(_line_pieces(base[k], w, stations[k], roots, intervals, lambda s: s > 0))
        builders[1].add_line(_line_pieces(base[k], w, stations[k], roots, intervals, lambda s: s < 0))

    stats = LineStats(
        offsets=tuple(float(o) for o in offsets),
        crossings=tuple(crossings),
        intervals=tuple(intervals_count),
        exterior_runs=tuple(runs),
    )
    report = _assemble_report(builders, Degeneracy.NONDEGENERATE, stats, tol)
    for curve in report.curves:
        _check_residuals(B, spec, curve.points, tol)
    logger.debug("Barrido por directriz: gamma=%g, %d curvas", gamma, len(report.curves))
    return report


def directional_convexity_violations(report: TraceReport) -> int:
    """Rectas del barrido en las que {F < 0} no es un intervalo."""
    return int(sum(1 for runs in report.lines.exterior_runs if runs > 1))


# ---------------------------------------------------------------------------
# Rasterizado
# ---------------------------------------------------------------------------


def region_grid(
    B: UnitBall,
    spec: ConicSpec,
    bbox: BBox,
    resolution: Union[int, Tuple[int, int]],
    tol: Optional[float] = None,
    mark_crossings: bool = True,
) -> OccupancyGrid:
    """
    Pertenencia del centro de cada celda.
    - Con `mark_crossings`, cuando el residuo cambia de signo entre dos centros vecinos
      la celda de menor |F| pasa a On (empate: índice menor).
    """
    tol = tol if tol is not None else get_settings().geometric_tol
    xmin, ymin, xmax, ymax = (float(t) for t in bbox)
    if not (xmax > xmin and ymax > ymin):
        raise InvalidSpecError(f"Caja vacía: {bbox}")
    nx, ny = (resolution, resolution) if isinstance(resolution, int) else resolution
    if nx < 1 or ny < 1:
        raise InvalidSpecError("La resolución debe ser positiva")

    xs = xmin + (np.arange(nx) + 0.5) * (xmax - xmin) / nx
    ys = ymin + (np.arange(ny) + 0.5) * (ymax - ymin) / ny
    X, Y = np.meshgrid(xs, ys)
    F = np.asarray(residual(B, spec, np.stack([X, Y], axis=-1)))
    codes = codes_from_residual(spec, F, tol).copy()

    if mark_crossings and not isinstance(spec, DSegment):
        on = codes == ON
        mark = np.zeros_like(on)
        a, b = F[:, :-1], F[:, 1:]
        crossing = (a * b < 0) & ~on[:, :-1] & ~on[:, 1:]
        first = crossing & (np.abs(a) <= np.abs(b))
        mark[:, :-1] |= first
        mark[:, 1:] |= crossing & ~first
        a, b = F[:-1, :], F[1:, :]
        crossing = (a * b < 0) & ~on[:-1, :] & ~on[1:, :]
        first = crossing & (np.abs(a) <= np.abs(b))
        mark[:-1, :] |= first
        mark[1:, :] |= crossing & ~first
        codes[mark] = ON
    return OccupancyGrid(codes, (xmin, ymin, xmax, ymax))


# ---------------------------------------------------------------------------
# Análisis de curvas
# ---------------------------------------------------------------------------


def _angle_gap(a, b):
    return np.abs((a - b + np.pi) % (2.0 * np.pi) - np.pi)


def _dedupe(points: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
    keep = np.ones(len(points), dtype=bool)
    keep[1:] = np.any(np.diff(points, axis=0) != 0, axis=1)
    return points[keep], np.nonzero(keep)[0]


def detect_segments(
    curve: PolyCurve,
    angle_tol: Optional[float] = None,
    min_length: Optional[float] = None,
    curve_index: int = 0,
) -> List[SegmentSpan]:
    """
    Tramos rectos: aristas consecutivas cuyas direcciones difieren a lo sumo `angle_tol`
    de una arista a la siguiente, con al menos dos aristas y longitud >= min_length.
    """
    settings = get_settings()
    angle_tol = angle_tol if angle_tol is not None else settings.segment_angle_tol
    if min_length is None:
        min_length = settings.segment_min_fraction * curve.extent

    P, index = _dedupe(np.asarray(curve.points))
    k = len(P)
    if curve.closed and k > 1 and np.all(P[0] == P[-1]):
        P, index, k = P[:-1], index[:-1], k - 1
    if k < 3:
        return []
    E = (np.roll(P, -1, axis=0) - P) if curve.closed else np.diff(P, axis=0)
    m = len(E)
    theta = np.arctan2(E[:, 1], E[:, 0])
    lengths = np.hypot(E[:, 0], E[:, 1])

    order = np.arange(m)
    if curve.closed:
        breaks = np.nonzero(_angle_gap(theta, np.roll(theta, 1)) > angle_tol)[0]
        if breaks.size == 0:
            return []
        order = (breaks[0] + np.arange(m)) % m

    spans: List[SegmentSpan] = []
    i = 0
    while i < m:
        j = i
        length = lengths[order[i]]
        while j + 1 < m and _angle_gap(theta[order[j + 1]], theta[order[j]]) <= angle_tol:
            j += 1
            length += lengths[order[j]]
        if j > i and length >= min_length:
            end = (order[j] + 1) % k
            spans.append(SegmentSpan(curve_index, int(index[order[i]]), int(index[end])))
        i = j + 1
    return spans


def convexity_check(curve: PolyCurve, tol: Optional[float] = None) -> ConvexityResult:
    """Convexa si todos los giros tienen el mismo signo y el giro total es ±2π."""
    if not curve.closed:
        raise InvalidSpecError("La comprobación de convexidad necesita una curva cerrada")
    tol = tol if tol is not None else get_settings().geometric_tol
    P, index = _dedupe(np.asarray(curve.points))
    if len(P) > 1 and np.all(P[0] == P[-1]):
        P, index = P[:-1], index[:-1]
    k = len(P)
    if k < 3:
        return ConvexityResult(False, 0)
    E = np.roll(P, -1, axis=0) - P
    En = np.roll(E, -1, axis=0)
    turns = cross(E, En)
    scale = np.hypot(E[:, 0], E[:, 1]) * np.hypot(En[:, 0], En[:, 1])
    angles = np.arctan2(turns, np.einsum("ij,ij->i", E, En))
    orient = 1.0 if angles.sum() >= 0 else -1.0
    bad = np.nonzero(orient * turns < -tol * scale)[0]
    if bad.size:
        return ConvexityResult(False, int(index[(bad[0] + 1) % k]))
    if abs(abs(angles.sum()) - 2.0 * np.pi) > 1e-3:
        return ConvexityResult(False, int(index[0]))
    return ConvexityResult(True)


def hausdorff_distance(c1, c2) -> float:
    """Distancia de Hausdorff euclídea simétrica entre las muestras de dos curvas."""
    P1 = np.asarray(c1.points if isinstance(c1, PolyCurve) else c1, dtype=float)
    P2 = np.asarray(c2.points if isinstance(c2, PolyCurve) else c2, dtype=float)
    if len(P1) == 0 or len(P2) == 0:
        raise InvalidSpecError("La distancia de Hausdorff necesita curvas no vacías")
    return float(max(directed_hausdorff(P1, P2)[0], directed_hausdorff(P2, P1)[0]))


# ---------------------------------------------------------------------------
# Asíntotas
# ---------------------------------------------------------------------------


def asymptote_candidates(
    B: UnitBall, spec: HyperbolaLeadingCircle, samples: int = 4096
) -> AsymptoteSet:
    """
    Rectas soporte del círculo director R·K que pasan por el foco.
    - Contacto puntual f: asíntota por el centro focus/2 con dirección f.
    - Contacto en segmento: cono con vértice focus/2 generado por sus extremos.
    Las asíntotas pasan por el centro de la hipérbola, el punto medio focus/2 entre sus focos 0 y
    focus, no por el origen: el origen es el centro de L, que es uno de los focos.
    """
    if not isinstance(spec, HyperbolaLeadingCircle):
        raise InvalidSpecError("Las asíntotas se construyen desde una hipérbola por círculo director")
    validate_spec(B, spec)
    root_tol = get_settings().root_tol
    x = np.asarray(spec.focus)
    R = spec.R

    def g(phi):
        n = np.stack([np.cos(phi), np.sin(phi)], axis=-1)
        return n @ x - R * np.asarray(support(B, n))

    phi = 2.0 * np.pi * np.arange(samples) / samples
    values = g(phi)
    zero = np.abs(values) <= 10.0 * root_tol * max(1.0, R)
    roots = [float(phi[i]) for i in np.nonzero(zero)[0]]
    wrapped = np.append(values, values[0])
    grid = np.append(phi, 2.0 * np.pi)
    masked = np.where(np.append(zero, zero[0]), 0.0, wrapped)
    for k in sign_changes(masked):
        roots.append(brentq(lambda t: float(g(np.array(t))), grid[k], grid[k + 1], xtol=root_tol))
    roots = merge_close([r % (2.0 * np.pi) for r in roots], 1e-9)
    if len(roots) > 1 and roots[0] + 2.0 * np.pi - roots[-1] < 1e-9:
        roots.pop()

    center = tuple(x / 2.0)
    items, tangents = [], []
    for r in roots:
        n = np.array([np.cos(r), np.sin(r)])
        face = contact_face(B, n)
        line = Line(tuple(x), (-n[1], n[0]))
        tangents.append(TangentData(normal=tuple(n), line=line, contact=face.transformed((0.0, 0.0), R)))
        if face.is_segment:
            items.append(AsymptoteCone(apex=center, directions=face.endpoints))
        else:
            f = face.endpoints[0]
            items.append(AsymptoteLine(line=Line(center, f), contact=f))
    return AsymptoteSet(items=tuple(items), tangents=tuple(tangents))


# ---------------------------------------------------------------------------
# Despachador
# ---------------------------------------------------------------------------


def default_bbox(B: UnitBall, spec: ConicSpec) -> BBox:
    """Caja que contiene los puntos notables de la cónica con margen."""
    if isinstance(spec, (EllipseFoci, HyperbolaFoci)):
        pts = np.array([spec.f1, spec.f2])
        size = 2.0 * spec.a
    elif isinstance(spec, (EllipseLeadingCircle, HyperbolaLeadingCircle)):
        pts = np.array([(0.0, 0.0), spec.focus])
        size = spec.R
    elif isinstance(spec, LeadingLineConic):
        pts = np.array([spec.focus, spec.line.point])
        size = float(dist_point_line(B, spec.focus, spec.line))
    else:
        pts = np.array([spec.x, spec.y])
        size = 0.0
    center = pts.mean(axis=0)
    half = 1.5 * max(float(np.abs(pts - center).max()), size, 1.0) + 1.0
    return (center[0] - half, center[1] - half, center[0] + half, center[1] + half)


def trace_spec(B: UnitBall, spec: ConicSpec, params: Optional[TraceParams] = None) -> TraceReport:
    """Clasifica la cónica y elige el trazador adecuado."""
    params = params or TraceParams()
    settings = get_settings()
    degeneracy = classify_degeneracy(B, spec)
    logger.debug("trace_spec: %s clasificado como %s", spec.kind, degeneracy.value)

    if degeneracy == Degeneracy.EMPTY:
        raise EmptyLocusError(f"Lugar vacío (empty locus): {spec.kind} no tiene puntos", degeneracy.value)
    if degeneracy != Degeneracy.NONDEGENERATE:
        grid = region_grid(
            B,
            spec,
            params.bbox or default_bbox(B, spec),
            params.resolution or settings.grid_resolution,
            params.tol,
        )
        return TraceReport(curves=(), segments=(), degeneracy=degeneracy, region=grid)

    bounded = isinstance(spec, (EllipseFoci, EllipseLeadingCircle)) or (
        isinstance(spec, LeadingLineConic) and spec.gamma > 1.0
    )
    if bounded:
        curve = radial_trace(B, spec, n=params.n, tol=params.tol)
        segments = tuple(detect_segments(curve))
        return TraceReport(curves=(curve,), segments=segments, degeneracy=degeneracy)
    if isinstance(spec, LeadingLineConic):
        return sweep_trace_leading_line(
            B, spec, params.extent, params.n_lines, params.tol, params.n_stations
        )
    report = sweep_trace_hyperbola_foci(
        B, spec, params.extent, params.n_lines, params.tol, params.n_stations
    )
    if isinstance(spec, HyperbolaLeadingCircle):
        report = TraceReport(
            curves=report.curves,
            segments=report.segments,
            degeneracy=report.degeneracy,
            lines=report.lines,
            asymptotes=asymptote_candidates(B, spec),
        )
    return report
