"""
Configuración global leída de variables de entorno (prefijo CONICS_) o de un
archivo .env en el directorio de trabajo.
"""

from functools import lru_cache
from dotenv import load_dotenv
from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict

load_dotenv()


class Settings(BaseSettings):
    """Tolerancias y valores por defecto de trazado y verificación."""

    model_config = SettingsConfigDict(env_prefix="CONICS_", extra="ignore")

    # Jerarquía de tolerancias: raíces 1e-10, igualdad geométrica 1e-6
    root_tol: float = Field(1e-10, gt=0, description="Tolerancia de búsqueda de raíces")
    geometric_tol: float = Field(1e-6, gt=0, description="Tolerancia de igualdad geométrica")
    face_tol: float = Field(
        1e-9, gt=0, description="Tolerancia relativa para caras de contacto"
    )

    trace_points: int = Field(720, ge=8, description="Rayos del trazado radial")
    sweep_lines: int = Field(257, ge=3, description="Rectas del barrido")
    sweep_stations: int = Field(1024, ge=512, description="Estaciones por recta")

    segment_angle_tol: float = Field(
        1e-6, gt=0, description="Desviación angular máxima dentro de un segmento"
    )
    segment_min_fraction: float = Field(
        1e-2, gt=0, lt=1, description="Longitud mínima de segmento / diámetro"
    )

    grid_resolution: int = Field(256, ge=2)
    seed: int = Field(20240601, description="Semilla por defecto de las verificaciones")
    log_level: str = Field("WARNING", pattern="^(DEBUG|INFO|WARNING|ERROR)$")
    svg_size: int = Field(800, ge=100)


@lru_cache
def get_settings() -> Settings:
    return Settings()
