"""
Producto semi-interior de los planos ℓp (1 < p < ∞), aplicación de dualidad,
adjunto generalizado y ceros de la cónica proyectiva Φ(x, x) = [A x, x].
"""

from typing import List, Optional
import numpy as np
from scipy.optimize import brentq
from app.exceptions import SingularMapError
from app.geometry.norm_engine import norm
from app.models.operator import FormProperties, LinearMap2, NonlinearityWitness, SipSpace, SipSummary
from app.utils.numeric import directions, sign_changes
from app.utils.settings import get_settings
from app.utils.validation import require_nonzero


def _signed_power(v: np.ndarray, e: float) -> np.ndarray:
    return np.sign(v) * np.abs(v) ** e


def _dual_norm(space: SipSpace, phi: np.ndarray):
    a = np.abs(phi)
    m = a.max(axis=-1)
    safe = np.where(m > 0, m, 1.0)
    return m * np.sum((a / safe[..., None]) ** space.q, axis=-1) ** (1.0 / space.q)


def sip(space: SipSpace, y, x):
    """[y, x] = ‖x‖^(2−p) Σ y_i |x_i|^(p−1) sgn(x_i); vale 0 si x = 0."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    nx = np.asarray(norm(space.ball, x))
    safe = np.where(nx > 0, nx, 1.0)
    xhat = x / safe[..., None]
    value = nx * np.sum(y * _signed_power(xhat, space.p - 1.0), axis=-1)
    return float(value) if np.ndim(value) == 0 else value


def duality_map(space: SipSpace, x) -> np.ndarray:
    """J(x): representante euclídeo del funcional [·, x]."""
    x = np.asarray(x, dtype=float)
    if x.ndim == 1:
        require_nonzero(x, "x")
    nx = np.asarray(norm(space.ball, x))
    safe = np.where(nx > 0, nx, 1.0)
    return nx[..., None] * _signed_power(x / safe[..., None], space.p - 1.0)


def inverse_duality(space: SipSpace, phi) -> np.ndarray:
    """J⁻¹(φ) = ‖φ‖_q^(2−q) |φ_i|^(q−1) sgn(φ_i), con q el exponente dual."""
    phi = np.asarray(phi, dtype=float)
    if phi.ndim == 1:
        require_nonzero(phi, "phi")
    nq = np.asarray(_dual_norm(space, phi))
    safe = np.where(nq > 0, nq, 1.0)
    return nq[..., None] * _signed_power(phi / safe[..., None], space.q - 1.0)


def generalized_adjoint(space: SipSpace, A: LinearMap2, y) -> np.ndarray:
    """A^T(y) = J⁻¹(Eᵀ J(y)), que cumple [A x, y] = [x, A^T(y)] para todo x."""
    y = require_nonzero(y, "y")
    phi = A.matrix.T @ duality_map(space, y)
    if not np.any(phi):
        return np.zeros(2)
    return inverse_duality(space, phi)


def _sample_directions(samples: int, seed: int) -> np.ndarray:
    rng = np.random.default_rng(seed)
    extra = rng.normal(size=(samples, 2))
    extra /= np.hypot(extra[:, 0], extra[:, 1])[:, None]
    return np.vstack([directions(samples), extra])


def is_self_adjoint(
    space: SipSpace,
    A: LinearMap2,
    samples: int = 256,
    tol: float = 1e-8,
    seed: Optional[int] = None,
) -> bool:
    """Compara A y con A^T(y) en `samples` direcciones fijas y otras tantas aleatorias."""
    seed = seed if seed is not None else get_settings().seed
    worst = 0.0
    for y in _sample_directions(samples, seed):
        diff = A(y) - generalized_adjoint(space, A, y)
        worst = max(worst, float(np.hypot(*diff)))
    return worst <= tol * max(1.0, A.opnorm)


def quadratic_form(space: SipSpace, A: LinearMap2, theta) -> np.ndarray:
    """Q(θ) = [A u(θ), u(θ)]."""
    theta = np.asarray(theta, dtype=float)
    u = np.stack([np.cos(theta), np.sin(theta)], axis=-1)
    return np.asarray(sip(space, A(u), u))


def projective_conic_zeros(space: SipSpace, A: LinearMap2, n: int = 4096) -> List[float]:
    """
    Direcciones θ ∈ [0, π) con Q(θ) = 0.
    - Q es homogénea de grado 2, así que Q(π) = Q(0) y basta con media vuelta.
    """
    if abs(A.det) <= 1e-12 * max(1.0, A.opnorm) ** 2:
        raise SingularMapError("La aplicación lineal es singular (det ≈ 0)")
    theta = np.pi * np.arange(n + 1) / n
    values = quadratic_form(space, A, theta)
    values[-1] = values[0]
    zero = np.abs(values) <= 1e-14 * max(1.0, A.opnorm)
    roots = [float(theta[i]) for i in np.nonzero(zero[:-1])[0]]
    for k in sign_changes(np.where(zero, 0.0, values)):
        roots.append(
            brentq(lambda t: float(quadratic_form(space, A, t)), theta[k], theta[k + 1], xtol=1e-10)
        )
    roots = sorted(r % np.pi for r in roots)
    merged: List[float] = []
    for r in roots:
        if not merged or r - merged[-1] > 1e-9:
            merged.append(r)
    if len(merged) > 1 and merged[0] + np.pi - merged[-1] <= 1e-9:
        merged.pop()
    return merged


def adjoint_nonlinearity_witness(
    space: SipSpace,
    A: LinearMap2,
    trials: int = 1000,
    seed: Optional[int] = None,
    threshold: float = 1e-3,
) -> Optional[NonlinearityWitness]:
    """Busca y1, y2 con ‖A^T(y1 + y2) − A^T(y1) − A^T(y2)‖ > threshold."""
    rng = np.random.default_rng(seed if seed is not None else get_settings().seed)
    best: Optional[NonlinearityWitness] = None
    for _ in range(trials):
        y1, y2 = rng.normal(size=(2, 2))
        if not np.any(y1 + y2):
            continue
        diff = (
            generalized_adjoint(space, A, y1 + y2)
            - generalized_adjoint(space, A, y1)
            - generalized_adjoint(space, A, y2)
        )
        defect = float(np.hypot(*diff))
        if best is None or defect > best.defect:
            best = NonlinearityWitness(tuple(y1.tolist()), tuple(y2.tolist()), defect)
    if best is None or best.defect <= threshold:
        return None
    return best


def is_square_operator(
    space: SipSpace, A: LinearMap2, root: LinearMap2, tol: float = 1e-9
) -> bool:
    """A = B·B con B autoadjunto."""
    product = root.matrix @ root.matrix
    if np.abs(product - A.matrix).max() > tol * max(1.0, A.opnorm):
        return False
    return is_self_adjoint(space, root)


def form_properties(
    space: SipSpace, A: LinearMap2, samples: int = 256, seed: Optional[int] = None
) -> FormProperties:
    """Defectos muestreados de Φ(x, y) = [A x, y]."""
    rng = np.random.default_rng(seed if seed is not None else get_settings().seed)
    x1, x2, y1, y2 = rng.normal(size=(4, samples, 2))
    alpha, beta = rng.normal(size=(2, samples))

    def phi(x, y):
        return np.asarray(sip(space, A(x), y))

    lin = phi(alpha[:, None] * x1 + beta[:, None] * x2, y1) - alpha * phi(x1, y1) - beta * phi(x2, y1)
    hom = phi(x1, alpha[:, None] * y1) - alpha * phi(x1, y1)
    add = phi(x1, y1 + y2) - phi(x1, y1) - phi(x1, y2)
    sym = phi(x1, y1) - phi(y1, x1)
    return FormProperties(
        linearity_first=float(np.abs(lin).max()),
        homogeneity_second=float(np.abs(hom).max()),
        additivity_second=float(np.abs(add).max()),
        symmetry=float(np.abs(sym).max()),
    )


def sip_summary(space: SipSpace, A: LinearMap2, seed: Optional[int] = None) -> SipSummary:
    """Resumen usado por la CLI: autoadjunción, direcciones nulas y testigo de no linealidad."""
    return SipSummary(
        self_adjoint=is_self_adjoint(space, A, seed=seed),
        zero_directions=tuple(projective_conic_zeros(space, A)),
        witness=adjoint_nonlinearity_witness(space, A, seed=seed),
    )
