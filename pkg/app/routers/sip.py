from pathlib import Path
from typing import Optional
import typer
from app.dependencies import cli_errors
from app.exceptions import InvalidSpecError
from app.exporters.json_writer import dumps, model_payload
from app.geometry.sip import sip_summary
from app.models.operator import LinearMap2, SipSpace
from app.schemas.report import NonlinearityWitnessResponse, SipReport


def parse_matrix(text: str) -> LinearMap2:
    """`a,b,c,d` -> [[a, b], [c, d]]."""
    try:
        values = [float(t) for t in text.split(",")]
    except ValueError:
        raise InvalidSpecError(f"Matriz no válida: '{text}'")
    if len(values) != 4:
        raise InvalidSpecError(f"La matriz necesita 4 entradas a,b,c,d; recibidas {len(values)}")
    return LinearMap2.from_flat(*values)


def sip_command(
    p: float = typer.Option(..., "--p", help="Exponente 1 < p < ∞"),
    matrix: str = typer.Option(..., "--matrix", help="Entradas a,b,c,d de [[a, b], [c, d]]"),
    seed: Optional[int] = typer.Option(None, "--seed"),
    json_out: Optional[Path] = typer.Option(None, "--json", help="Salida JSON (por defecto, salida estándar)"),
):
    """Autoadjunción, direcciones nulas de [A x, x] y testigo de no linealidad del adjunto."""
    with cli_errors():
        space = SipSpace.lp(p)
        A = parse_matrix(matrix)
        summary = sip_summary(space, A, seed=seed)
        witness = summary.witness
        report = SipReport(
            p=space.p,
            matrix=A.entries,
            self_adjoint=summary.self_adjoint,
            zero_directions=list(summary.zero_directions),
            adjoint_nonlinearity_witness=(
                NonlinearityWitnessResponse(y1=witness.y1, y2=witness.y2, defect=witness.defect)
                if witness is not None
                else None
            ),
        )
        payload = dumps(model_payload(report))
        if json_out:
            json_out.write_bytes(payload)
        else:
            typer.echo(payload.decode("utf-8"), nl=False)
