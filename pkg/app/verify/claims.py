"""
Comprobaciones ejecutables de las propiedades de las cónicas métricas.

Cada función devuelve un `ClaimReport` cuyo `pass` depende solo de las métricas
calculadas y de los umbrales fijados aquí.
"""

from typing import Iterable, List, Optional, Sequence
import numpy as np
from scipy.optimize import minimize
from app.exceptions import InvalidSpecError
from app.geometry.loci import (
    leading_circle_touch_defect,
    residual,
    tangency_membership_leading_circle,
)
from app.geometry.norm_engine import ball_properties, is_birkhoff_orthogonal, norm
from app.geometry.sip import (
    adjoint_nonlinearity_witness,
    duality_map,
    generalized_adjoint,
    is_self_adjoint,
    projective_conic_zeros,
    sip,
)
from app.geometry.tracer import (
    convexity_check,
    detect_segments,
    directional_convexity_violations,
    hausdorff_distance,
    radial_roots,
    radial_trace,
    region_grid,
    sweep_trace_hyperbola_foci,
    sweep_trace_leading_line,
)
from app.models.ball import Line, LpBall, PolygonBall, UnitBall
from app.models.conic import (
    Bisector,
    ConicSpec,
    EllipseFoci,
    EllipseLeadingCircle,
    HyperbolaFoci,
    HyperbolaLeadingCircle,
    LeadingLineConic,
    Membership,
    MEMBERSHIP_CODES,
)
from app.models.curve import PolyCurve
from app.models.operator import LinearMap2, SipSpace
from app.schemas.report import ClaimReport
from app.utils.logging import get_logger
from app.utils.numeric import directions, rot90
from app.utils.settings import get_settings
from app.utils.validation import as_point

logger = get_logger(__name__)

ON = MEMBERSHIP_CODES[Membership.ON]

# Configuración diagonal: foco en el origen, directriz por (1, 1) paralela a (1, −1)
DIAGONAL_FOCUS = (0.0, 0.0)
DIAGONAL_LINE = Line((1.0, 1.0), (1.0, -1.0))


def _report(
    claim: str,
    B: UnitBall,
    parameters: dict,
    passed: bool,
    metrics: dict,
    witnesses: Iterable = (),
    notes: Sequence[str] = (),
) -> ClaimReport:
    return ClaimReport(
        claim=claim,
        ball=B.describe(),
        parameters=parameters,
        passed=bool(passed),
        metrics={k: float(v) for k, v in metrics.items()},
        witnesses=[(float(p[0]), float(p[1])) for p in witnesses],
        notes=list(notes),
    )


def _line_params(line: Line) -> dict:
    return {"point": list(line.point), "direction": list(line.direction)}


def unit_along(B: UnitBall, v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    return v / norm(B, v)


def flat_direction(B: UnitBall) -> np.ndarray:
    """
    Vector unitario por defecto para las hipérbolas centradas.
    - Bolas estrictamente convexas y ℓ∞: (1, 0) normalizado.
    - ℓ1 y polígonos: punto medio de una arista (interior relativo de una cara plana).
    """
    if isinstance(B, PolygonBall):
        V = B.vertex_array
        return unit_along(B, (V[0] + V[1]) / 2.0)
    if isinstance(B, LpBall) and B.p == 1.0:
        return np.array([0.5, 0.5])
    return unit_along(B, (1.0, 0.0))


# ---------------------------------------------------------------------------
# Elipses por focos y por círculo director
# ---------------------------------------------------------------------------


def check_prop1_equivalence(B: UnitBall, focus, a: float, n: Optional[int] = None) -> ClaimReport:
    """Traza E(0, focus, a) por focos y por la construcción directa de tangencia y las compara."""
    settings = get_settings()
    n = n or settings.trace_points
    tol = settings.geometric_tol
    focus = as_point(focus, "focus")
    if not a > 0 or norm(B, focus) >= 2.0 * a:
        raise InvalidSpecError("Se necesita ‖focus‖ < 2a")

    foci_spec = EllipseFoci((0.0, 0.0), tuple(focus), a)
    circle_spec = EllipseLeadingCircle(2.0 * a, tuple(focus))
    seed = focus / 2.0
    dirs = directions(n)

    by_foci = radial_trace(B, foci_spec, seed=seed, n=n)
    t = radial_roots(
        lambda z: -np.asarray(leading_circle_touch_defect(B, circle_spec, z)),
        seed,
        dirs,
        a,
        settings.root_tol,
    )
    by_circle = PolyCurve(seed + t[:, None] * dirs, closed=True, residual_tol=tol, label="leading_circle")

    tangent = np.array(
        [tangency_membership_leading_circle(B, circle_spec, z, tol) for z in by_circle.points]
    )
    distance = hausdorff_distance(by_foci, by_circle)
    foci_residual = float(np.abs(residual(B, foci_spec, by_circle.points)).max())
    passed = distance <= 10.0 * tol and tangent.all()
    return _report(
        "prop1-equivalence",
        B,
        {"focus": focus.tolist(), "a": a, "n": n},
        passed,
        {
            "hausdorff": distance,
            "tangency_fraction": tangent.mean(),
            "max_foci_residual_on_circle_trace": foci_residual,
        },
        witnesses=by_circle.points[~tangent][:5],
    )


def check_thm1(B: UnitBall, line: Line, focus, gamma: float, n: Optional[int] = None) -> ClaimReport:
    """Elipse por directriz: convexa, y sin segmentos si y solo si la bola es estrictamente convexa."""
    if gamma <= 1.0:
        raise InvalidSpecError("La elipse por directriz necesita gamma > 1")
    spec = LeadingLineConic(tuple(as_point(focus, "focus")), line, gamma)
    curve = radial_trace(B, spec, n=n)
    convexity = convexity_check(curve)
    segments = detect_segments(curve)
    strict = ball_properties(B).strictly_convex
    passed = convexity.convex and ((len(segments) == 0) == strict)
    witnesses = [] if convexity.convex else [curve.points[convexity.witness]]
    witnesses += [curve.points[s.start] for s in segments[:4]]
    return _report(
        "thm1",
        B,
        {"focus": list(spec.focus), "line": _line_params(line), "gamma": gamma},
        passed,
        {"convex": convexity.convex, "segments": len(segments), "strictly_convex": strict},
        witnesses=witnesses,
    )


# ---------------------------------------------------------------------------
# Hipérbolas degeneradas y por focos
# ---------------------------------------------------------------------------


def _ray_distance(Z: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Distancia euclídea a las semirrectas {t·x : t >= 1} ∪ {t·x : t <= −1}."""
    t = Z @ x / (x @ x)
    d_plus = np.hypot(*(Z - np.maximum(t, 1.0)[:, None] * x).T)
    d_minus = np.hypot(*(Z - np.minimum(t, -1.0)[:, None] * x).T)
    return np.minimum(d_plus, d_minus)


def check_thm2(
    B: UnitBall,
    x=None,
    resolution: int = 256,
    bbox=(-3.0, -3.0, 3.0, 3.0),
) -> ClaimReport:
    """
    (i) H(x, 0) coincide celda a celda con la bisectriz de −x y x.
    (ii) H(x, 2): semirrectas si la bola es estrictamente convexa, conos con área si no.
    """
    tol = get_settings().geometric_tol
    x = flat_direction(B) if x is None else as_point(x, "x")
    if abs(norm(B, x) - 1.0) > 1e-9:
        raise InvalidSpecError("x debe estar en la circunferencia unidad")
    strict = ball_properties(B).strictly_convex
    minus_x, plus_x = tuple(-x), tuple(x)

    hyperbola = region_grid(B, HyperbolaFoci(minus_x, plus_x, 0.0), bbox, resolution, tol, mark_crossings=False)
    bisector = region_grid(B, Bisector(minus_x, plus_x), bbox, resolution, tol, mark_crossings=False)
    agreement = float(np.mean((hyperbola.codes == ON) == (bisector.codes == ON)))

    # Resolución impar para muestrear el eje focal
    odd = resolution + 1 if resolution % 2 == 0 else resolution
    rays = region_grid(B, HyperbolaFoci(minus_x, plus_x, 1.0), bbox, odd, tol)
    on_points = rays.on_points()
    cell = np.hypot(bbox[2] - bbox[0], bbox[3] - bbox[1]) / odd
    far = _ray_distance(on_points, x) if len(on_points) else np.zeros(0)
    max_far = float(far.max()) if len(far) else 0.0

    if strict:
        second = rays.on_fraction <= 4.0 / odd and max_far <= cell
    else:
        second = rays.on_fraction > 0.01
    passed = agreement == 1.0 and second
    return _report(
        "thm2",
        B,
        {"x": x.tolist(), "resolution": resolution, "bbox": list(bbox)},
        passed,
        {
            "i_agreement": agreement,
            "ii_on_fraction": rays.on_fraction,
            "ii_max_ray_distance": max_far,
            "strictly_convex": strict,
        },
        witnesses=on_points[far > cell][:5] if strict and len(far) else [],
    )


def check_thm3(
    B: UnitBall,
    x=None,
    a: Optional[float] = None,
    extent: Optional[float] = None,
    n_lines: Optional[int] = None,
) -> ClaimReport:
    """Hipérbola por focos ±x: dos puntos por recta sin segmentos si y solo si la bola es estrictamente convexa."""
    x = unit_along(B, (1.0, 0.0)) if x is None else as_point(x, "x")
    c = float(norm(B, x))
    a = 0.5 * c if a is None else float(a)
    if not 0.0 < a < c:
        raise InvalidSpecError(f"Se necesita 0 < a < c = {c:g}")
    spec = HyperbolaFoci(tuple(-x), tuple(x), a)
    report = sweep_trace_hyperbola_foci(B, spec, extent=extent, n_lines=n_lines)
    strict = ball_properties(B).strictly_convex
    crossings = np.asarray(report.lines.crossings)
    if strict:
        passed = bool(np.all(crossings == 2)) and report.root_intervals == 0 and not report.segments
    else:
        passed = report.root_intervals > 0 or len(report.segments) > 0
    return _report(
        "thm3",
        B,
        {"x": x.tolist(), "a": a, "lines": len(crossings)},
        passed,
        {
            "min_crossings": crossings.min(),
            "max_crossings": crossings.max(),
            "root_intervals": report.root_intervals,
            "segments": len(report.segments),
            "curves": len(report.curves),
            "strictly_convex": strict,
        },
        witnesses=[report.curves[s.curve].points[s.start] for s in report.segments[:4]],
    )


def check_remark1(B: UnitBall, x=None, fractions: Sequence[float] = (0.25, 0.5, 0.75)) -> ClaimReport:
    """La topología de las hipérbolas por focos no depende del valor de a."""
    x = unit_along(B, (1.0, 0.0)) if x is None else as_point(x, "x")
    c = float(norm(B, x))
    reports = [check_thm3(B, x, f * c) for f in fractions]
    metrics = {f"a_{f:g}c_passed": r.passed for f, r in zip(fractions, reports)}
    metrics.update({f"a_{f:g}c_segments": r.metrics["segments"] for f, r in zip(fractions, reports)})
    return _report(
        "remark1",
        B,
        {"x": x.tolist(), "fractions": list(fractions)},
        all(r.passed for r in reports),
        metrics,
    )


def check_prop2_equivalence(B: UnitBall, focus=None, a: Optional[float] = None) -> ClaimReport:
    """Hipérbola por focos frente a la construcción por círculo director, y simetría central."""
    tol = get_settings().geometric_tol
    focus = 2.0 * unit_along(B, (1.0, 0.0)) if focus is None else as_point(focus, "focus")
    a = 0.5 if a is None else float(a)
    foci_spec = HyperbolaFoci((0.0, 0.0), tuple(focus), a)
    circle_spec = HyperbolaLeadingCircle(2.0 * a, tuple(focus))
    report = sweep_trace_hyperbola_foci(B, foci_spec)
    points = np.vstack([curve.points for curve in report.curves])
    tangent = np.array([tangency_membership_leading_circle(B, circle_spec, z, tol) for z in points])
    reflected = focus - points
    symmetry = float(np.abs(residual(B, foci_spec, reflected)).max())
    passed = tangent.all() and symmetry <= 2.0 * tol
    return _report(
        "prop2-equivalence",
        B,
        {"focus": focus.tolist(), "a": a},
        passed,
        {"tangency_fraction": tangent.mean(), "symmetry_defect": symmetry, "points": len(points)},
        witnesses=points[~tangent][:5],
    )


# ---------------------------------------------------------------------------
# Cónicas por directriz no acotadas
# ---------------------------------------------------------------------------


def _leading_line_metrics(B: UnitBall, spec: LeadingLineConic):
    report = sweep_trace_leading_line(B, spec)
    strict = ball_properties(B).strictly_convex
    per_line = np.asarray(report.lines.crossings) + np.asarray(report.lines.intervals)
    segments_ok = (len(report.segments) > 0) == (not strict)
    return report, strict, per_line, segments_ok


def check_thm4(B: UnitBall, line: Line, focus, gamma: float) -> ClaimReport:
    """Hipérbola por directriz: a lo sumo dos curvas simples, segmentos si y solo si la bola no es estrictamente convexa."""
    if not 0.0 < gamma < 1.0:
        raise InvalidSpecError("La hipérbola por directriz necesita 0 < gamma < 1")
    spec = LeadingLineConic(tuple(as_point(focus, "focus")), line, gamma)
    report, strict, per_line, segments_ok = _leading_line_metrics(B, spec)
    violations = directional_convexity_violations(report)
    passed = 1 <= len(report.curves) <= 2 and per_line.max() <= 2 and segments_ok and violations == 0
    return _report(
        "thm4",
        B,
        {"focus": list(spec.focus), "line": _line_params(line), "gamma": gamma},
        passed,
        {
            "curves": len(report.curves),
            "max_crossings_per_line": per_line.max(),
            "segments": len(report.segments),
            "directional_convexity_violations": violations,
            "strictly_convex": strict,
        },
        witnesses=[report.curves[s.curve].points[s.start] for s in report.segments[:4]],
    )


def _midpoint_violations(B: UnitBall, spec: LeadingLineConic, samples: int, seed: int) -> List[np.ndarray]:
    """Pares de puntos de I = {F > 0} cuyo punto medio sale de I."""
    tol = get_settings().geometric_tol
    rng = np.random.default_rng(seed)
    f = np.asarray(spec.focus)
    half = 4.0 * max(abs(float(spec.line.signed_gap(f))), 1.0)
    cloud = f + rng.uniform(-half, half, size=(4 * samples, 2))
    inside = cloud[np.asarray(residual(B, spec, cloud)) > tol]
    if len(inside) < 2:
        return []
    i = rng.integers(0, len(inside), samples)
    j = rng.integers(0, len(inside), samples)
    mid = (inside[i] + inside[j]) / 2.0
    bad = np.asarray(residual(B, spec, mid)) < -tol
    return list(mid[bad])


def check_thm5(B: UnitBall, line: Line, focus, samples: int = 2000, seed: Optional[int] = None) -> ClaimReport:
    """Parábola: una curva simple, segmentos si y solo si la bola no es estrictamente convexa, I convexo."""
    seed = seed if seed is not None else get_settings().seed
    spec = LeadingLineConic(tuple(as_point(focus, "focus")), line, 1.0)
    report, strict, per_line, segments_ok = _leading_line_metrics(B, spec)
    bad_midpoints = _midpoint_violations(B, spec, samples, seed)
    passed = len(report.curves) == 1 and per_line.max() <= 2 and segments_ok and not bad_midpoints
    return _report(
        "thm5",
        B,
        {"focus": list(spec.focus), "line": _line_params(line), "samples": samples, "seed": seed},
        passed,
        {
            "curves": len(report.curves),
            "max_crossings_per_line": per_line.max(),
            "segments": len(report.segments),
            "midpoint_convexity_violations": len(bad_midpoints),
            "directional_convexity_violations": directional_convexity_violations(report),
            "strictly_convex": strict,
        },
        witnesses=bad_midpoints[:5] or [report.curves[s.curve].points[s.start] for s in report.segments[:4]],
    )


# ---------------------------------------------------------------------------
# Simetría central
# ---------------------------------------------------------------------------


def symmetry_defect(B: UnitBall, spec: ConicSpec, points: np.ndarray, center) -> float:
    """max |F(2c − z)| sobre los puntos trazados."""
    return float(np.abs(np.asarray(residual(B, spec, 2.0 * np.asarray(center) - points))).max())


def best_symmetry_center(B: UnitBall, spec: ConicSpec, curve: PolyCurve):
    """Centro que minimiza el defecto de simetría (Nelder–Mead desde el centroide)."""
    points = curve.points
    x0 = points.mean(axis=0)
    step = 0.1 * max(curve.extent, 1e-3)
    best_x, best_f = x0, symmetry_defect(B, spec, points, x0)
    for _ in range(2):
        simplex = np.array([best_x, best_x + (step, 0.0), best_x + (0.0, step)])
        res = minimize(
            lambda c: symmetry_defect(B, spec, points, c),
            best_x,
            method="Nelder-Mead",
            options={"initial_simplex": simplex, "xatol": 1e-12, "fatol": 1e-15, "maxiter": 4000},
        )
        if res.fun <= best_f:
            best_x, best_f = np.asarray(res.x), float(res.fun)
        step *= 1e-3
    return best_x, best_f


def check_def1_symmetry(
    B: UnitBall,
    spec: ConicSpec,
    expect_symmetric: bool,
    curve: Optional[PolyCurve] = None,
    center=None,
) -> ClaimReport:
    """
    Defecto de simetría central de una curva trazada.
    - Con `center` se evalúa en ese punto; si no, se busca el mejor centro.
    - Simétrica si el defecto no supera 10 veces la tolerancia de trazado.
    """
    tol = get_settings().geometric_tol
    curve = curve if curve is not None else radial_trace(B, spec)
    if center is None:
        center, defect = best_symmetry_center(B, spec, curve)
    else:
        center = as_point(center, "center")
        defect = symmetry_defect(B, spec, curve.points, center)
    symmetric = defect <= 10.0 * tol
    return _report(
        "def1-symmetry",
        B,
        {"spec": spec.kind, "expect_symmetric": expect_symmetric},
        symmetric == expect_symmetric,
        {"defect": defect, "threshold": 10.0 * tol, "symmetric": symmetric},
        witnesses=[center],
    )


# ---------------------------------------------------------------------------
# Producto semi-interior
# ---------------------------------------------------------------------------


def check_sip_axioms(
    p: float, samples: int = 10000, pairs: int = 1000, seed: Optional[int] = None
) -> ClaimReport:
    """Axiomas del producto semi-interior, equivalencia con Birkhoff y adjunto generalizado."""
    seed = seed if seed is not None else get_settings().seed
    space = SipSpace.lp(p)
    rng = np.random.default_rng(seed)
    x, y1, y2 = rng.normal(size=(3, samples, 2))
    lam = rng.normal(size=samples)
    nx = np.asarray(norm(space.ball, x))
    ny = np.asarray(norm(space.ball, y1))

    square = np.abs(np.asarray(sip(space, x, x)) - nx**2) / np.maximum(1.0, nx**2)
    additivity = np.abs(sip(space, y1 + y2, x) - sip(space, y1, x) - sip(space, y2, x))
    homogeneity = np.abs(sip(space, lam[:, None] * y1, x) - lam * sip(space, y1, x))
    schwarz = np.asarray(sip(space, y1, x)) ** 2 - nx**2 * ny**2
    axioms = (
        square.max() <= 1e-10
        and additivity.max() <= 1e-10 * max(1.0, float((nx * ny).max()))
        and homogeneity.max() <= 1e-10 * max(1.0, float((np.abs(lam) * nx * ny).max()))
        and schwarz.max() <= 1e-10
    )

    # Mitad de los pares se construyen ortogonales: y ⟂ J(x) en el sentido euclídeo
    gx = rng.normal(size=(pairs, 2))
    gy = rng.normal(size=(pairs, 2))
    half = pairs // 2
    gy[:half] = rot90(duality_map(space, gx[:half])) * rng.uniform(0.5, 2.0, size=(half, 1))
    agree = 0
    for u, v in zip(gx, gy):
        birkhoff = is_birkhoff_orthogonal(space.ball, u, v, tol=1e-12)
        semi = abs(sip(space, v, u)) <= 1e-6 * norm(space.ball, u) * norm(space.ball, v)
        agree += birkhoff == semi
    giles = agree / pairs

    worst_adjoint = 0.0
    for _ in range(100):
        A = LinearMap2(tuple(map(tuple, rng.normal(size=(2, 2)))))
        u, v = rng.normal(size=(2, 2))
        w = generalized_adjoint(space, A, v)
        scale = 1.0 + A.opnorm * np.hypot(*u) * np.hypot(*v)
        worst_adjoint = max(worst_adjoint, abs(sip(space, A(u), v) - sip(space, u, w)) / scale)

    shear = LinearMap2(((1.0, 1.0), (0.0, 1.0)))
    witness = adjoint_nonlinearity_witness(space, shear, seed=seed)
    witness_ok = (witness is not None) == (p != 2.0)

    hyperbolic = LinearMap2(((1.0, 0.0), (0.0, -1.0)))
    zeros = projective_conic_zeros(space, hyperbolic)
    zeros_ok = len(zeros) == 2 and np.allclose(zeros, [np.pi / 4, 3 * np.pi / 4], atol=1e-8)
    scaled_zeros = projective_conic_zeros(space, hyperbolic.scaled(-2.5))
    class_ok = is_self_adjoint(space, hyperbolic.scaled(3.0)) == is_self_adjoint(space, hyperbolic) and (
        len(scaled_zeros) == len(zeros) and np.allclose(scaled_zeros, zeros, atol=1e-8)
    )

    passed = axioms and giles >= 0.999 and worst_adjoint <= 1e-8 and witness_ok and zeros_ok and class_ok
    witnesses = [witness.y1, witness.y2] if witness is not None else []
    return _report(
        "sip-axioms",
        space.ball,
        {"p": p, "samples": samples, "pairs": pairs, "seed": seed},
        passed,
        {
            "max_square_defect": square.max(),
            "max_additivity_defect": additivity.max(),
            "max_homogeneity_defect": homogeneity.max(),
            "max_schwarz_excess": max(0.0, float(schwarz.max())),
            "giles_agreement": giles,
            "max_adjoint_residual": worst_adjoint,
            "nonlinearity_defect": witness.defect if witness is not None else 0.0,
            "zero_directions_ok": zeros_ok,
            "class_invariance_ok": class_ok,
        },
        witnesses=witnesses,
    )
