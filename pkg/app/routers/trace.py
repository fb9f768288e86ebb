from pathlib import Path
from typing import List, Optional
import typer
from rich.console import Console
from app.dependencies import cli_errors, load_scene, scene_models
from app.exporters.csv_writer import write_csv
from app.exporters.json_writer import write_json
from app.exporters.pgm import write_pgm
from app.exporters.svg import emit_svg, union_bbox, write_svg
from app.geometry.tracer import default_bbox, trace_spec
from app.models.curve import TraceReport
from app.schemas.scene import OutputSpec
from app.utils.logging import get_logger

logger = get_logger(__name__)
console = Console()


def _summary(specs, reports: List[TraceReport]) -> list:
    return [
        {
            "kind": spec.kind,
            "degeneracy": report.degeneracy.value,
            "curves": len(report.curves),
            "points": sum(len(c) for c in report.curves),
            "segments": len(report.segments),
            "root_intervals": report.root_intervals,
            "on_fraction": report.region.on_fraction if report.region is not None else None,
        }
        for spec, report in zip(specs, reports)
    ]


def trace_scene(
    scene: Path = typer.Option(..., "--scene", help="Escena JSON"),
    csv: Optional[Path] = typer.Option(None, "--csv", help="Curvas trazadas en CSV"),
    svg: Optional[Path] = typer.Option(None, "--svg", help="Figura SVG"),
):
    """
    Traza todas las cónicas de una escena.
    - Las salidas de la escena (`outputs`) se suman a las indicadas con --csv y --svg.
    - Un lugar vacío o una escena mal formada terminan con código 2.
    """
    with cli_errors():
        data = load_scene(scene)
        B, specs = scene_models(data)
        params = data.trace_params()
        logger.info("Trazando %d cónicas sobre %s", len(specs), B.describe())
        reports = [trace_spec(B, spec, params) for spec in specs]

        outputs = list(data.outputs)
        if csv:
            outputs.append(OutputSpec(format="csv", path=str(csv)))
        if svg:
            outputs.append(OutputSpec(format="svg", path=str(svg)))

        bbox = data.bbox or union_bbox(default_bbox(B, spec) for spec in specs)
        for out in outputs:
            if out.format == "csv":
                write_csv(out.path, [c for r in reports for c in r.curves])
            elif out.format == "svg":
                write_svg(out.path, emit_svg(B, specs, reports, bbox))
            elif out.format == "json":
                write_json(out.path, {"ball": B.describe(), "specs": _summary(specs, reports)})
            elif out.format == "pgm":
                grids = [r.region for r in reports if r.region is not None]
                if not grids:
                    logger.warning("Salida PGM omitida: ninguna cónica es degenerada")
                    continue
                write_pgm(out.path, grids[0], comment=B.describe())
            logger.info("Escrito %s", out.path)

        for row in _summary(specs, reports):
            console.print(
                f"{row['kind']}: {row['degeneracy']}, {row['curves']} curvas, "
                f"{row['points']} puntos, {row['segments']} segmentos"
            )
