"""
Contraejemplo en ℓ∞: una elipse definida por focos que no es una elipse definida
por directriz y foco.

La elipse E(−x, x, 2) con x = (1, 1) es un hexágono. Se comprueba en tres pasos:
(a) el sistema de razones tiene solución única s = 1, r = 2/3;
(b) en el marco de l a distancia s y x′ a distancia euclídea r de 2x, la razón en −z vale (12 − √2)/12;
(c) ninguna configuración de una malla de 10⁴ directrices reproduce la traza.
"""

from fractions import Fraction
from typing import Optional, Tuple
import numpy as np
from scipy.optimize import brentq
from app.geometry.loci import residual
from app.geometry.norm_engine import dist_point_line, max_euclidean_ratio, norm, support
from app.geometry.tracer import radial_trace
from app.models.ball import INF, Line, LpBall
from app.models.conic import EllipseFoci, LeadingLineConic
from app.schemas.report import ClaimReport
from app.utils.logging import get_logger
from app.utils.numeric import rot90, unit
from app.utils.settings import get_settings

logger = get_logger(__name__)

SQRT2 = float(np.sqrt(2.0))
TARGET_RATIO = (12.0 - SQRT2) / 12.0


def solve_ratio_system(A: int = 4, B: int = 2, C: int = 1) -> Tuple[Fraction, Fraction]:
    """
    Resuelve r/s = (A − r)/(A + s) = (B − r)/(C + s) en aritmética exacta.
    - De la primera igualdad r = A·s/(A + 2s); de la segunda r = B·s/(C + 2s).
    """
    A, B, C = Fraction(A), Fraction(B), Fraction(C)
    s = A * (B - C) / (2 * (A - B))
    r = A * s / (A + 2 * s)
    return s, r


def _ratios(s: Fraction, r: Fraction, A: int = 4, B: int = 2, C: int = 1):
    return r / s, (A - r) / (A + s), (B - r) / (C + s)


def _leading_ratio(ball, z, focus, line: Line) -> float:
    """‖z − x′‖ / d(z, l): vale 1/gamma sobre la cónica por directriz."""
    return float(norm(ball, np.asarray(z) - focus) / dist_point_line(ball, z, line))


def consistent_frame(ball) -> dict:
    """
    Directriz x + y = 6, foco (4/3, 4/3) y gamma = 3/2: pasa por 2x, −2x y v = (2, 0),
    pero no por −v, que sí está en la elipse por focos.
    """
    spec = LeadingLineConic((4.0 / 3.0, 4.0 / 3.0), Line((3.0, 3.0), (1.0, -1.0)), 1.5)
    anchors = np.array([[2.0, 2.0], [-2.0, -2.0], [2.0, 0.0]])
    return {
        "consistent_residual_max": float(np.abs(residual(ball, spec, anchors)).max()),
        "ratio_minus_v": _leading_ratio(ball, (-2.0, 0.0), np.asarray(spec.focus), spec.line),
    }


def _ray_hit(ball, spec: EllipseFoci, direction) -> Optional[np.ndarray]:
    """Corte del rayo centro + t·direction (t > 0) con la elipse por focos; `None` sin cambio de signo."""
    centre = (np.asarray(spec.f1) + np.asarray(spec.f2)) / 2.0
    direction = unit(direction)
    reach = 2.0 * spec.a + float(norm(ball, np.asarray(spec.f2) - spec.f1))

    def along(t: float) -> float:
        return float(residual(ball, spec, centre + t * direction))

    if along(0.0) >= 0.0 or along(reach) <= 0.0:
        return None
    return centre + brentq(along, 0.0, reach, xtol=1e-14) * direction


def euclidean_frame(ball, trace: np.ndarray, foci_spec: EllipseFoci, s: float = 1.0, r: float = 2.0 / 3.0) -> dict:
    """
    Marco de la razón (12 − √2)/12:
    - l es perpendicular a la recta focal, a distancia (en la norma) s más allá del vértice 2x;
    - x′ está sobre la recta focal a distancia euclídea r de 2x, hacia el centro;
    - z es el simétrico de v respecto de la recta focal y −z su antípoda en la traza.
    Los puntos 2x, v y −z se obtienen cortando rayos con la elipse, sin usar la razón.
    """
    focal = unit(np.asarray(foci_spec.f2) - foci_spec.f1)
    centre = (np.asarray(foci_spec.f1) + np.asarray(foci_spec.f2)) / 2.0
    apex = _ray_hit(ball, foci_spec, focal)
    v = _ray_hit(ball, foci_spec, (1.0, 0.0))
    if apex is None or v is None:
        return {"minus_z": None}

    w = v - centre
    mirror = 2.0 * (w @ focal) * focal - w
    minus_z = _ray_hit(ball, foci_spec, -mirror)
    if minus_z is None:
        return {"minus_z": None}

    line = Line(tuple(apex + s * float(support(ball, focal)) * focal), tuple(rot90(focal)))
    focus = apex - r * focal
    return {
        "minus_z": minus_z,
        "focus": focus,
        "ratio_minus_z": _leading_ratio(ball, minus_z, focus, line),
        "minus_z_residual": float(abs(residual(ball, foci_spec, minus_z))),
        "minus_z_trace_gap": float(np.linalg.norm(trace - minus_z, axis=1).min()),
        # −z = (0, −2), l: x + y = 4 + 2s, x′ = (2 − r/√2)(1, 1)
        "closed_form_ratio": (4.0 - r / SQRT2) / (3.0 + s),
    }


def brute_force_bound(ball, trace: np.ndarray) -> Tuple[float, int]:
    """
    Cota inferior de la distancia de Hausdorff entre la traza y cada cónica por directriz
    de la malla: max |F3(z_i)| / Lip(F3).
    - Directrices x + y = c con c = 4.5, 5, ..., 9; focos en una malla 10×10 de [−5/3, 4/3]²;
      gamma = 1.25, 1.5, ..., 3.5.
    """
    offsets = 4.5 + 0.5 * np.arange(10)
    grid = -5.0 / 3.0 + np.arange(10) / 3.0
    foci = np.stack(np.meshgrid(grid, grid, indexing="ij"), axis=-1).reshape(-1, 2)
    gammas = 1.25 + 0.25 * np.arange(10)

    normal = np.array([1.0, 1.0]) / SQRT2
    h = float(support(ball, normal))
    # d(z, l) = |z·n − c/√2| / h(n)
    d = np.abs(trace @ normal - offsets[:, None] / SQRT2) / h
    N = norm(ball, trace[None, :, :] - foci[:, None, :])
    F3 = d[:, None, None, :] - gammas[None, None, :, None] * N[None, :, None, :]
    lip = 1.0 / h + gammas * max_euclidean_ratio(ball)
    bound = np.abs(F3).max(axis=-1) / lip[None, None, :]
    return float(bound.min()), int(bound.size)


def reproduce_linf_counterexample(n: int = 720) -> ClaimReport:
    """Reproduce el contraejemplo de ℓ∞ y devuelve un único informe."""
    tol = get_settings().geometric_tol
    ball = LpBall(INF)
    x = (1.0, 1.0)
    foci_spec = EllipseFoci((-1.0, -1.0), x, 2.0)

    s, r = solve_ratio_system()
    ratios = _ratios(s, r)
    system_ok = s == 1 and r == Fraction(2, 3) and all(v == Fraction(2, 3) for v in ratios)

    consistent = consistent_frame(ball)
    trace = radial_trace(ball, foci_spec, n=n).points
    frame = euclidean_frame(ball, trace, foci_spec, float(s), float(r))
    min_bound, configs = brute_force_bound(ball, trace)
    logger.info("Barrido de %d configuraciones: cota mínima %.3e", configs, min_bound)

    notes = [
        "La razón 2/3 es c/a (distancia al foco entre distancia a la directriz); "
        "una elipse por directriz necesita a/c > 1, así que 2/3 corresponde a la razón inversa.",
        "Marco de (12−√2)/12: l es x+y=6 (distancia ℓ∞ s=1 de 2x) y x′ está a distancia euclídea r=2/3 de 2x; "
        "ahí 2x y v no dan la misma razón, por eso se añade el marco consistente (x+y=6, x′=(4/3,4/3), gamma=3/2).",
    ]
    metrics = {
        "s": float(s),
        "r": float(r),
        "ratio_system": float(ratios[0]),
        "consistent_residual_max": consistent["consistent_residual_max"],
        "ratio_minus_v": consistent["ratio_minus_v"],
        "ratio_target": TARGET_RATIO,
        "brute_force_min_lower_bound": min_bound,
    }
    witnesses = [(-2.0, 0.0)]

    minus_z = frame["minus_z"]
    if minus_z is None:
        frame_ok = False
        notes.append("No se encontró −z: algún rayo no corta la elipse trazada.")
    else:
        ratio = frame["ratio_minus_z"]
        frame_ok = (
            abs(ratio - TARGET_RATIO) <= 1e-6
            and abs(ratio - frame["closed_form_ratio"]) <= 1e-9
            and abs(ratio - 2.0 / 3.0) > 0.2
            and frame["minus_z_residual"] <= tol
            # Separación angular 2π/n sobre radios euclídeos menores que 2a
            and frame["minus_z_trace_gap"] <= 2.0 * np.pi * 2.0 * foci_spec.a / n
        )
        metrics.update(
            {
                "ratio_minus_z": ratio,
                "closed_form_ratio": frame["closed_form_ratio"],
                "minus_z_residual": frame["minus_z_residual"],
                "minus_z_trace_gap": frame["minus_z_trace_gap"],
            }
        )
        witnesses.insert(0, tuple(minus_z))

    consistent_ok = consistent["consistent_residual_max"] <= 1e-12 and consistent["ratio_minus_v"] != 2.0 / 3.0
    passed = system_ok and frame_ok and consistent_ok and min_bound > 1e-3

    return ClaimReport(
        claim="prop1-counterexample",
        ball=ball.describe(),
        parameters={"x": list(x), "a": 2.0, "n": n, "brute_force_configs": configs},
        passed=passed,
        metrics=metrics,
        witnesses=witnesses,
        notes=notes,
    )
