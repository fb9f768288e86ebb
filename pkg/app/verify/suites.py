"""
Baterías de comprobaciones por identificador.

`run_claims` traduce una lista de identificadores (o "all") a las configuraciones
por defecto de cada comprobación. Toda la aleatoriedad sale de `seed`.
"""

from typing import Callable, Dict, List, Optional, Sequence
import numpy as np
from app.exceptions import InvalidBallError, InvalidSpecError
from app.geometry.norm_engine import ball_properties, norm
from app.models.ball import Line, LpBall, UnitBall
from app.models.conic import EllipseFoci, LeadingLineConic
from app.schemas.report import ClaimReport
from app.utils.logging import get_logger
from app.utils.numeric import rot90, unit
from app.utils.settings import get_settings
from app.verify import claims
from app.verify.counterexample import reproduce_linf_counterexample

logger = get_logger(__name__)

CLAIM_IDS = (
    "prop1",
    "thm1",
    "thm2",
    "thm3",
    "thm4",
    "thm5",
    "def1-symmetry",
    "prop2",
    "remark1",
    "sip",
    "counterexample",
)

ALIASES = {
    "prop1-equivalence": "prop1",
    "prop1-counterexample": "counterexample",
    "thm2-i": "thm2",
    "thm2-ii": "thm2",
    "prop2-equivalence": "prop2",
    "sip-axioms": "sip",
}

PROP1_CASES = (((1.0, 0.0), 2.0), ((0.5, 0.5), 1.5), ((-0.3, 0.8), 1.2))


def resolve_claims(requested: Sequence[str], B: UnitBall) -> List[str]:
    """
    Normaliza identificadores y alias, sin duplicados y en el orden canónico.
    - "all" omite `sip` si la bola no es lisa.
    - Pedir `sip` explícitamente con una bola no lisa es un error.
    """
    smooth = ball_properties(B).smooth
    wanted = set()
    for raw in requested:
        name = raw.strip().lower()
        if not name:
            continue
        if name == "all":
            wanted.update(c for c in CLAIM_IDS if c != "sip" or smooth)
            continue
        name = ALIASES.get(name, name)
        if name not in CLAIM_IDS:
            raise InvalidSpecError(f"Comprobación desconocida '{raw}'. Disponibles: {', '.join(CLAIM_IDS)}")
        if name == "sip" and not smooth:
            raise InvalidBallError("La comprobación 'sip' necesita una bola lisa (ℓp con 1 < p < ∞)")
        wanted.add(name)
    if not wanted:
        raise InvalidSpecError("No se ha indicado ninguna comprobación")
    return [c for c in CLAIM_IDS if c in wanted]


def parse_claims(text: str) -> List[str]:
    return [part for part in text.split(",") if part.strip()]


def _random_leading_lines(rng: np.random.Generator, count: int, low: float, high: float):
    """Configuraciones (recta, foco, gamma) con el foco a distancia euclídea entre 1 y 3 de la recta."""
    configs = []
    for _ in range(count):
        focus = rng.uniform(-1.0, 1.0, size=2)
        direction = unit(rng.normal(size=2))
        gap = rng.uniform(1.0, 3.0)
        line = Line(tuple(focus + gap * rot90(direction)), tuple(direction))
        configs.append((line, tuple(focus), float(rng.uniform(low, high))))
    return configs


def _prop1(B: UnitBall) -> List[ClaimReport]:
    reports = []
    for focus, a in PROP1_CASES:
        focus = np.asarray(focus)
        size = float(norm(B, focus))
        if size >= 1.8 * a:
            # Bolas poligonales muy alargadas: se acerca el foco para cumplir ‖focus‖ < 2a
            focus = focus * (0.9 * a / size)
        reports.append(claims.check_prop1_equivalence(B, focus, a))
    return reports


def _thm1(B: UnitBall, rng) -> List[ClaimReport]:
    configs = [
        (claims.DIAGONAL_LINE, claims.DIAGONAL_FOCUS, 2.0),
        (Line((4.0, 0.0), (0.0, 1.0)), (1.0, 0.0), 2.0),
    ]
    configs += _random_leading_lines(rng, 3, 1.5, 3.0)
    return [claims.check_thm1(B, line, focus, gamma) for line, focus, gamma in configs]


def _thm4(B: UnitBall) -> List[ClaimReport]:
    configs = [
        (claims.DIAGONAL_LINE, claims.DIAGONAL_FOCUS, 0.5),
        (Line((4.0, 0.0), (0.0, 1.0)), (1.0, 0.0), 0.5),
    ]
    return [claims.check_thm4(B, line, focus, gamma) for line, focus, gamma in configs]


def _thm5(B: UnitBall, seed: int) -> List[ClaimReport]:
    configs = [
        (claims.DIAGONAL_LINE, claims.DIAGONAL_FOCUS),
        (Line((0.0, 0.0), (1.0, 0.0)), (0.0, 1.0)),
    ]
    return [claims.check_thm5(B, line, focus, seed=seed) for line, focus in configs]


def _def1(B: UnitBall) -> List[ClaimReport]:
    foci = EllipseFoci((-1.0, 0.0), (1.0, 0.0), 0.75 * float(norm(B, (2.0, 0.0))))
    reports = [claims.check_def1_symmetry(B, foci, expect_symmetric=True, center=(0.0, 0.0))]
    if isinstance(B, LpBall) and (B.is_inf or B.p == 2.0):
        diagonal = LeadingLineConic(claims.DIAGONAL_FOCUS, claims.DIAGONAL_LINE, 2.0)
        reports.append(claims.check_def1_symmetry(B, diagonal, expect_symmetric=not B.is_inf))
    return reports


def run_claims(B: UnitBall, requested: Sequence[str], seed: Optional[int] = None) -> List[ClaimReport]:
    """Ejecuta las comprobaciones pedidas en orden canónico y devuelve todos los informes."""
    seed = seed if seed is not None else get_settings().seed
    suites: Dict[str, Callable[[], List[ClaimReport]]] = {
        "prop1": lambda: _prop1(B),
        "thm1": lambda: _thm1(B, np.random.default_rng(seed)),
        "thm2": lambda: [claims.check_thm2(B)],
        "thm3": lambda: [claims.check_thm3(B)],
        "thm4": lambda: _thm4(B),
        "thm5": lambda: _thm5(B, seed),
        "def1-symmetry": lambda: _def1(B),
        "prop2": lambda: [claims.check_prop2_equivalence(B)],
        "remark1": lambda: [claims.check_remark1(B)],
        "sip": lambda: [claims.check_sip_axioms(B.p, seed=seed)],
        "counterexample": lambda: [reproduce_linf_counterexample()],
    }
    reports: List[ClaimReport] = []
    for claim in resolve_claims(requested, B):
        logger.info("Ejecutando %s sobre %s", claim, B.describe())
        batch = suites[claim]()
        for report in batch:
            if not report.passed:
                logger.warning("%s no se cumple: %s", report.claim, report.metrics)
        reports.extend(batch)
    return reports
