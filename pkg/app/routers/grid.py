from pathlib import Path
from typing import Optional
import typer
from rich.console import Console
from app.dependencies import cli_errors, load_scene, scene_models
from app.exporters.pgm import write_pgm
from app.exporters.svg import emit_svg, union_bbox, write_svg
from app.geometry.loci import classify_degeneracy
from app.geometry.tracer import default_bbox, region_grid
from app.models.curve import TraceReport
from app.utils.logging import get_logger
from app.utils.settings import get_settings

logger = get_logger(__name__)
console = Console()


def _numbered(path: Path, k: int, total: int) -> Path:
    return path if total == 1 else path.with_name(f"{path.stem}_{k}{path.suffix}")


def grid_scene(
    scene: Path = typer.Option(..., "--scene", help="Escena JSON"),
    resolution: Optional[int] = typer.Option(None, "--resolution", min=2, help="Celdas por lado"),
    pgm: Path = typer.Option(..., "--pgm", help="Rejilla PGM (P2); con varias cónicas se numera"),
    svg: Optional[Path] = typer.Option(None, "--svg", help="Figura SVG de las rejillas"),
):
    """Rasteriza la pertenencia de cada cónica de la escena (pensado para lugares degenerados)."""
    with cli_errors():
        data = load_scene(scene)
        B, specs = scene_models(data)
        resolution = resolution or get_settings().grid_resolution
        bbox = data.bbox or union_bbox(default_bbox(B, spec) for spec in specs)

        reports = []
        for k, spec in enumerate(specs):
            degeneracy = classify_degeneracy(B, spec)
            grid = region_grid(B, spec, bbox, resolution, data.trace.tol)
            reports.append(TraceReport(curves=(), segments=(), degeneracy=degeneracy, region=grid))
            path = _numbered(pgm, k, len(specs))
            write_pgm(path, grid, comment=f"{B.describe()} {spec.kind} {degeneracy.value}")
            console.print(f"{spec.kind}: {degeneracy.value}, fracción On {grid.on_fraction:.6f} -> {path}")

        if svg:
            write_svg(svg, emit_svg(B, specs, reports, bbox))
