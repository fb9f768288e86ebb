from pydantic import BaseModel, Field, model_validator
from typing import List, Literal, Optional, Tuple
from app.models.curve import TraceParams
from app.schemas.ball import BallSchema
from app.schemas.conic import ConicSchema


class TraceSettings(BaseModel):
    """Parámetros de trazado; los valores nulos se toman de la configuración."""

    n: Optional[int] = Field(None, ge=8, description="Rayos del trazado radial")
    extent: Optional[float] = Field(None, gt=0, description="Semiancho del barrido")
    tol: Optional[float] = Field(None, gt=0, description="Tolerancia geométrica")


class OutputSpec(BaseModel):
    format: Literal["csv", "svg", "pgm", "json"]
    path: str = Field(..., min_length=1)


class Scene(BaseModel):
    """
    Escena: bola unidad, cónicas a trazar, parámetros y salidas.
    - `bbox`: (xmin, ymin, xmax, ymax); si falta, cada cónica usa su caja por defecto.
    """

    ball: BallSchema
    specs: List[ConicSchema] = Field(..., min_length=1)
    trace: TraceSettings = Field(default_factory=TraceSettings)
    bbox: Optional[Tuple[float, float, float, float]] = None
    outputs: List[OutputSpec] = Field(default_factory=list)

    @model_validator(mode="after")
    def check_bbox(self):
        if self.bbox is not None:
            xmin, ymin, xmax, ymax = self.bbox
            if not (xmin < xmax and ymin < ymax):
                raise ValueError("bbox vacía: se necesita xmin < xmax e ymin < ymax")
        return self

    def trace_params(self, resolution: Optional[int] = None) -> TraceParams:
        return TraceParams(
            n=self.trace.n,
            extent=self.trace.extent,
            tol=self.trace.tol,
            bbox=self.bbox,
            resolution=resolution,
        )
