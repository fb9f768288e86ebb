"""
Jerarquía de errores del núcleo geométrico.

Todos los errores llevan un mensaje legible en `detail` y el código de salida
que debe devolver la CLI cuando el error llega hasta un comando.
"""

from typing import Optional, Tuple


class ConicsError(Exception):
    """Error base. `detail` es el mensaje que se muestra al usuario."""

    exit_code: int = 2

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail


class InvalidBallError(ConicsError):
    """La bola unidad no cumple sus invariantes (simetría, convexidad, p >= 1...)."""


class InvalidSpecError(ConicsError):
    """La descripción de la cónica no es válida para la bola dada."""


class ZeroVectorError(ConicsError):
    """Se recibió el vector nulo donde se exige un vector no nulo."""


class NotTangentError(ConicsError):
    """El disco z + rK no toca la recta (precondición de touch_face_with_line)."""


class BracketingError(ConicsError):
    """No se pudo acotar la raíz del residuo a lo largo de un rayo."""

    def __init__(self, detail: str, direction: Optional[Tuple[float, float]] = None):
        super().__init__(detail)
        self.direction = direction


class DegenerateSpecError(ConicsError):
    """El lugar es degenerado y el trazador pedido no lo admite."""

    def __init__(self, detail: str, degeneracy: Optional[str] = None):
        super().__init__(detail)
        self.degeneracy = degeneracy


class EmptyLocusError(DegenerateSpecError):
    """El lugar geométrico es vacío (por ejemplo 2a < ‖f1 − f2‖)."""


class TraceError(ConicsError):
    """El trazado produjo puntos que no cumplen la tolerancia del residuo."""


class SingularMapError(ConicsError):
    """La aplicación lineal no es invertible."""


class SceneError(ConicsError):
    """Escena mal formada. `location` indica línea o campo del error."""

    def __init__(self, detail: str, location: Optional[str] = None):
        if location:
            detail = f"{location}: {detail}"
        super().__init__(detail)
        self.location = location
