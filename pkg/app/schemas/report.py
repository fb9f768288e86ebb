from pydantic import BaseModel, Field
from typing import Any, Dict, List, Optional, Tuple


class ClaimReport(BaseModel):
    """
    Resultado de una comprobación ejecutable.
    - `claim`: identificador (por ejemplo "prop1-equivalence", "thm2").
    - `passed`: se serializa como `pass`; depende solo de `metrics` y de los umbrales declarados.
    - `witnesses`: puntos que ilustran el resultado (contraejemplos, puntos fuera de tolerancia...).
    """

    claim: str = Field(..., min_length=1)
    ball: str = Field(..., description="Descriptor de la bola unidad")
    parameters: Dict[str, Any] = Field(default_factory=dict)
    passed: bool = Field(..., alias="pass")
    metrics: Dict[str, float] = Field(default_factory=dict)
    witnesses: List[Tuple[float, float]] = Field(default_factory=list)
    notes: List[str] = Field(default_factory=list)

    class Config:
        populate_by_name = True  # Permite construir con `passed=` y serializar como `pass`


class NonlinearityWitnessResponse(BaseModel):
    y1: Tuple[float, float]
    y2: Tuple[float, float]
    defect: float


class SipReport(BaseModel):
    """
    Salida del comando `sip`.
    - `zero_directions`: ángulos en radianes dentro de [0, π).
    """

    p: float = Field(..., gt=1)
    matrix: Tuple[Tuple[float, float], Tuple[float, float]]
    self_adjoint: bool
    zero_directions: List[float]
    adjoint_nonlinearity_witness: Optional[NonlinearityWitnessResponse] = None
