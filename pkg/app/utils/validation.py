import math
import numpy as np
from app.exceptions import InvalidSpecError, ZeroVectorError


def as_point(v, name: str = "vector") -> np.ndarray:
    """Convierte `v` en un array float de forma (2,) y comprueba que es finito."""
    arr = np.asarray(v, dtype=float)
    if arr.shape != (2,):
        raise InvalidSpecError(f"{name} debe tener dos componentes, recibido {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise InvalidSpecError(f"{name} tiene componentes no finitas")
    return arr


def require_nonzero(v, name: str = "vector") -> np.ndarray:
    """Como `as_point`, pero además rechaza el vector nulo."""
    arr = as_point(v, name)
    if arr[0] == 0.0 and arr[1] == 0.0:
        raise ZeroVectorError(f"{name} no puede ser el vector nulo")
    return arr


def require_positive(value: float, name: str) -> float:
    value = float(value)
    if not math.isfinite(value) or value <= 0:
        raise InvalidSpecError(f"{name} debe ser un número positivo, recibido {value}")
    return value


def normalize_descriptor(text: str) -> str:
    """Normaliza un descriptor de la CLI:
    - Elimina espacios
    - Pasa a minúsculas
    - Acepta 'infinity' e 'infty' como 'inf'
    """
    text = "".join(text.split()).lower()
    for alias in ("infinity", "infty"):
        text = text.replace(alias, "inf")
    return text
